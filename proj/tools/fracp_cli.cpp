#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <functional>
#include <optional>
#include <string>

#include "fracp/experiment/config.hpp"
#include "fracp/experiment/runs.hpp"
#include "fracp/parallel.hpp"

namespace {

namespace ex = fracp::experiment;

struct CommonFlags {
  std::string config;
  std::optional<std::string> out;
  std::optional<long long> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out, "Output directory (overrides output.dir)");
  cmd->add_option("--seed", flags.seed, "Random seed (overrides seed)");
  cmd->add_option("--threads", flags.threads, "Worker threads (overrides threads)")
      ->check(CLI::PositiveNumber);
}

ex::ExperimentConfig resolve(const CommonFlags& flags) {
  ex::ExperimentConfig cfg = ex::load_config(flags.config);
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.seed) cfg.seed = static_cast<std::uint64_t>(*flags.seed);
  if (flags.threads) cfg.threads = *flags.threads;
  fracp::set_default_threads(cfg.threads);
  return cfg;
}

int report(const ex::RunManifest& m) {
  for (const auto& f : m.files) fmt::print("wrote {}\n", f);
  for (const auto& n : m.notes) fmt::print(stderr, "{}\n", n);
  return m.exit_code == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-order fractional p-Laplacian evolution experiments"};
  app.require_subcommand(1);

  using Runner = std::function<ex::RunManifest(const ex::ExperimentConfig&)>;
  const std::pair<const char*, Runner> commands[] = {
      {"solve", ex::run_solve},
      {"cascade", ex::run_cascade},
      {"check", ex::run_checks},
      {"kernel-stats", ex::run_kernel_stats},
      {"bench", ex::bench_kernel},
  };
  const char* help[] = {
      "Solve the implicit Euler scheme and write trajectory.csv",
      "Run the truncation cascade and write cascade.csv",
      "Evaluate property checks and write checks.csv",
      "Write kernel weights and exterior masses",
      "Time kernel assembly and operator application",
  };

  CommonFlags flags;
  std::vector<std::pair<CLI::App*, Runner>> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i].first, help[i]);
    add_common(cmd, flags);
    subs.emplace_back(cmd, commands[i].second);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const ex::ExperimentConfig cfg = resolve(flags);
    for (auto& [cmd, run] : subs)
      if (cmd->parsed()) return report(run(cfg));
  } catch (const ex::ConfigError& e) {
    for (const auto& issue : e.issues())
      fmt::print(stderr, "config error: {}{}: {}\n", issue.key,
                 issue.line > 0 ? fmt::format(" (line {})", issue.line) : "", issue.message);
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}
