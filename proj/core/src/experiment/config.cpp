#include "fracp/experiment/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace fracp::experiment {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt::format("{}", v[i]);
  return out;
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::vector<ConfigIssue>& issues)
      : entries_(std::move(entries)), issues_(issues) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  bool has_prefix(const std::string& prefix) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.first.rfind(prefix, 0) == 0; });
  }

  void number(const std::string& key, double& out) {
    if (const Entry* e = take(key)) {
      if (auto v = to_double(e->value)) out = *v;
      else fail(key, e->line, "expected a number, got '" + e->value + "'");
    }
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (const Entry* e = take(key)) {
      if (auto v = to_int(e->value)) out = static_cast<Int>(*v);
      else fail(key, e->line, "expected an integer, got '" + e->value + "'");
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const Entry* e = take(key)) out = e->value;
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (const Entry* e = take(key)) {
      std::vector<double> parsed;
      for (const auto& item : split_list(e->value)) {
        if (auto v = to_double(item)) parsed.push_back(*v);
        else fail(key, e->line, "expected a list of numbers, got '" + e->value + "'");
      }
      out = std::move(parsed);
    }
  }

  void integers(const std::string& key, std::vector<int>& out) {
    if (const Entry* e = take(key)) {
      std::vector<int> parsed;
      for (const auto& item : split_list(e->value)) {
        if (auto v = to_int(item)) parsed.push_back(static_cast<int>(*v));
        else fail(key, e->line, "expected a list of integers, got '" + e->value + "'");
      }
      out = std::move(parsed);
    }
  }

  void words(const std::string& key, std::vector<std::string>& out) {
    if (const Entry* e = take(key)) out = split_list(e->value);
  }

  /// One value broadcasts to every axis; two values set (x, y).
  void point(const std::string& key, Point& out) {
    if (const Entry* e = take(key)) {
      const auto items = split_list(e->value);
      std::vector<double> v;
      for (const auto& item : items)
        if (auto d = to_double(item)) v.push_back(*d);
      if (v.size() != items.size() || v.empty() || v.size() > 2) {
        fail(key, e->line, "expected one or two numbers, got '" + e->value + "'");
      } else {
        out = {v[0], v.size() == 2 ? v[1] : v[0]};
      }
    }
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void fail(const std::string& key, int line, std::string message) {
    issues_.push_back({key, line, std::move(message)});
  }

  void report_unknown() {
    for (const auto& [key, e] : entries_)
      if (!used_.count(key)) fail(key, e.line, "unknown key");
  }

 private:
  const Entry* take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    used_.insert({key, true});
    return &it->second;
  }

  std::map<std::string, Entry> entries_;
  std::map<std::string, bool> used_;
  std::vector<ConfigIssue>& issues_;
};

void read_profile(Reader& r, const std::string& prefix, ProfileSpec& spec) {
  r.text(prefix + ".kind", spec.kind);
  r.number(prefix + ".amplitude", spec.amplitude);
  r.point(prefix + ".center", spec.center);
  r.number(prefix + ".width", spec.width);
  r.number(prefix + ".alpha", spec.alpha);
}

void validate_profile(Reader& r, const std::string& prefix, const ProfileSpec& spec, int dim) {
  static const std::vector<std::string> kinds{"zero", "constant", "gaussian", "power"};
  const int line = r.line_of(prefix + ".kind");
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end())
    r.fail(prefix + ".kind", line,
           "unknown profile '" + spec.kind + "' (expected zero, constant, gaussian, power)");
  if (spec.kind == "gaussian" && !(spec.width > 0.0))
    r.fail(prefix + ".width", r.line_of(prefix + ".width"), "width must be > 0");
  if (spec.kind == "power" && !(spec.alpha > 0.0 && spec.alpha < dim))
    r.fail(prefix + ".alpha", r.line_of(prefix + ".alpha"),
           fmt::format("alpha must lie in (0, N) = (0, {}) for an integrable singularity", dim));
}

void render_profile(std::string& out, const std::string& prefix, const ProfileSpec& s) {
  out += fmt::format("{0}.kind = {1}\n{0}.amplitude = {2}\n{0}.center = {3}, {4}\n"
                     "{0}.width = {5}\n{0}.alpha = {6}\n",
                     prefix, s.kind, s.amplitude, s.center[0], s.center[1], s.width, s.alpha);
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& i : issues)
          msg += fmt::format("\n  {}{}: {}", i.key, i.line > 0 ? fmt::format(" (line {})", i.line) : "",
                             i.message);
        return msg;
      }()),
      issues_(std::move(issues)) {}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"l1_contraction", "comparison", "energy",   "tail",
                                              "renormalized",   "entropy",    "poincare"};
  return names;
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<ConfigIssue> issues;
  std::map<std::string, Entry> entries;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back({line, line_no, "expected 'key = value'"});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.push_back({"", line_no, "empty key"});
      continue;
    }
    if (auto it = entries.find(key); it != entries.end()) {
      issues.push_back({key, line_no,
                        fmt::format("duplicate key (first defined at line {}, again at line {})",
                                    it->second.line, line_no)});
      continue;
    }
    entries.emplace(key, Entry{value, line_no});
  }

  ExperimentConfig c;
  Reader r(std::move(entries), issues);

  r.integer("grid.dimension", c.grid.dimension);
  r.point("grid.lo", c.grid.box_lo);
  r.point("grid.hi", c.grid.box_hi);
  r.integer("grid.cells", c.grid.cells_per_axis);
  r.number("grid.collar", c.grid.collar_radius);
  r.number("time.horizon", c.grid.time_horizon);
  r.integer("time.steps", c.time_steps);

  r.text("order.kind", c.order.kind);
  r.number("order.s0", c.order.s0);
  r.number("order.slope", c.order.slope);
  r.number("order.cap", c.order.cap);
  r.number("order.amplitude", c.order.amplitude);
  r.point("order.center", c.order.center);
  r.number("order.width", c.order.width);

  r.number("p", c.p);
  read_profile(r, "initial", c.initial);
  read_profile(r, "source", c.source);
  c.has_alt = r.has_prefix("alt.");
  c.alt_initial = c.initial;
  c.alt_source = c.source;
  read_profile(r, "alt.initial", c.alt_initial);
  read_profile(r, "alt.source", c.alt_source);

  r.numbers("cascade.levels", c.cascade_levels);
  r.numbers("cascade.k", c.truncation_levels);

  r.words("checks.select", c.checks);
  r.numbers("checks.k", c.check_k);
  r.numbers("checks.h", c.tail_h);
  r.number("checks.tolerance", c.check_tolerance);
  r.text("checks.trajectory", c.trajectory_path);
  r.text("checks.alt_trajectory", c.alt_trajectory_path);
  r.point("checks.phi.center", c.phi_center);
  r.number("checks.phi.radius", c.phi_radius);
  r.number("checks.phi.amplitude", c.phi_amplitude);
  r.integer("checks.poincare_samples", c.poincare_samples);

  r.number("solver.tolerance", c.solver.relative_tolerance);
  r.integer("solver.max_iterations", c.solver.max_iterations);

  r.integers("bench.sizes", c.bench_sizes);
  r.integer("bench.repeats", c.bench_repeats);
  r.integer("bench.applies", c.bench_applies);

  r.text("output.dir", c.output_dir);
  long long seed = 0;
  r.integer("seed", seed);
  if (seed < 0) r.fail("seed", r.line_of("seed"), "seed must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  r.integer("threads", c.threads);

  r.report_unknown();

  // Range validation.
  const int dim = c.grid.dimension;
  if (dim != 1 && dim != 2)
    r.fail("grid.dimension", r.line_of("grid.dimension"), "dimension must be 1 or 2");
  if (c.grid.cells_per_axis < 2)
    r.fail("grid.cells", r.line_of("grid.cells"), "cells must be >= 2");
  if (!(c.grid.collar_radius > 0.0))
    r.fail("grid.collar", r.line_of("grid.collar"), "collar radius must be > 0");
  for (int a = 0; a < std::clamp(dim, 1, 2); ++a)
    if (!(c.grid.box_lo[a] < c.grid.box_hi[a]))
      r.fail("grid.hi", r.line_of("grid.hi"), "grid.lo must be < grid.hi on every axis");
  if (!(c.grid.time_horizon > 0.0))
    r.fail("time.horizon", r.line_of("time.horizon"), "horizon must be > 0");
  if (c.time_steps < 1) r.fail("time.steps", r.line_of("time.steps"), "steps must be >= 1");
  if (!(c.p >= 1.1 && c.p <= 10.0))
    r.fail("p", r.line_of("p"),
           fmt::format("p = {} outside the admissible exponent range [1.1, 10]", c.p));

  static const std::vector<std::string> order_kinds{"constant", "affine", "bump"};
  if (std::find(order_kinds.begin(), order_kinds.end(), c.order.kind) == order_kinds.end()) {
    r.fail("order.kind", r.line_of("order.kind"),
           "unknown order '" + c.order.kind + "' (expected constant, affine, bump)");
  } else {
    const double hi = c.order.kind == "constant" ? c.order.s0
                      : c.order.kind == "affine" ? c.order.s0 + c.order.slope * c.order.cap
                                                 : c.order.s0 + c.order.amplitude;
    if (!(c.order.s0 > 0.0 && hi < 1.0 && hi >= c.order.s0))
      r.fail("order.s0", r.line_of("order.s0"),
             fmt::format("order range [{}, {}] must lie inside (0, 1)", c.order.s0, hi));
    if (c.order.kind == "affine" && !(c.order.cap > 0.0))
      r.fail("order.cap", r.line_of("order.cap"), "cap must be > 0");
    if (c.order.kind == "bump" && !(c.order.width > 0.0))
      r.fail("order.width", r.line_of("order.width"), "width must be > 0");
  }

  validate_profile(r, "initial", c.initial, dim);
  validate_profile(r, "source", c.source, dim);
  if (c.has_alt) {
    validate_profile(r, "alt.initial", c.alt_initial, dim);
    validate_profile(r, "alt.source", c.alt_source, dim);
  }

  for (std::size_t i = 0; i < c.cascade_levels.size(); ++i) {
    if (!(c.cascade_levels[i] > 0.0) || (i > 0 && !(c.cascade_levels[i] > c.cascade_levels[i - 1]))) {
      r.fail("cascade.levels", r.line_of("cascade.levels"),
             "levels must be positive and strictly increasing");
      break;
    }
  }
  for (double k : c.truncation_levels)
    if (!(k > 0.0)) r.fail("cascade.k", r.line_of("cascade.k"), "truncation levels must be > 0");
  for (const auto& name : c.checks)
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
      r.fail("checks.select", r.line_of("checks.select"), "unknown check '" + name + "'");
  for (double k : c.check_k)
    if (!(k > 0.0)) r.fail("checks.k", r.line_of("checks.k"), "k must be > 0");
  for (double h : c.tail_h)
    if (!(h > 0.0)) r.fail("checks.h", r.line_of("checks.h"), "h must be > 0");
  if (!(c.check_tolerance > 0.0))
    r.fail("checks.tolerance", r.line_of("checks.tolerance"), "tolerance must be > 0");
  if (!(c.phi_radius > 0.0))
    r.fail("checks.phi.radius", r.line_of("checks.phi.radius"), "radius must be > 0");
  if (c.poincare_samples < 1)
    r.fail("checks.poincare_samples", r.line_of("checks.poincare_samples"), "must be >= 1");
  if (!(c.solver.relative_tolerance > 0.0))
    r.fail("solver.tolerance", r.line_of("solver.tolerance"), "tolerance must be > 0");
  if (c.solver.max_iterations < 1)
    r.fail("solver.max_iterations", r.line_of("solver.max_iterations"), "must be >= 1");
  for (int s : c.bench_sizes)
    if (s < 2) r.fail("bench.sizes", r.line_of("bench.sizes"), "sizes must be >= 2");
  if (c.bench_repeats < 1) r.fail("bench.repeats", r.line_of("bench.repeats"), "must be >= 1");
  if (c.bench_applies < 1) r.fail("bench.applies", r.line_of("bench.applies"), "must be >= 1");
  if (c.threads < 1) r.fail("threads", r.line_of("threads"), "threads must be >= 1");

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{"--config", 0, "cannot open '" + path.string() + "'"}});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const ExperimentConfig& c) {
  std::string out;
  out += fmt::format("grid.dimension = {}\n", c.grid.dimension);
  out += fmt::format("grid.lo = {}, {}\n", c.grid.box_lo[0], c.grid.box_lo[1]);
  out += fmt::format("grid.hi = {}, {}\n", c.grid.box_hi[0], c.grid.box_hi[1]);
  out += fmt::format("grid.cells = {}\n", c.grid.cells_per_axis);
  out += fmt::format("grid.collar = {}\n", c.grid.collar_radius);
  out += fmt::format("time.horizon = {}\n", c.grid.time_horizon);
  out += fmt::format("time.steps = {}\n", c.time_steps);
  out += fmt::format("order.kind = {}\norder.s0 = {}\norder.slope = {}\norder.cap = {}\n",
                     c.order.kind, c.order.s0, c.order.slope, c.order.cap);
  out += fmt::format("order.amplitude = {}\norder.center = {}, {}\norder.width = {}\n",
                     c.order.amplitude, c.order.center[0], c.order.center[1], c.order.width);
  out += fmt::format("p = {}\n", c.p);
  render_profile(out, "initial", c.initial);
  render_profile(out, "source", c.source);
  if (c.has_alt) {
    render_profile(out, "alt.initial", c.alt_initial);
    render_profile(out, "alt.source", c.alt_source);
  }
  out += fmt::format("cascade.levels = {}\n", fmt_list(c.cascade_levels));
  out += fmt::format("cascade.k = {}\n", fmt_list(c.truncation_levels));
  std::string checks;
  for (std::size_t i = 0; i < c.checks.size(); ++i) checks += (i ? ", " : "") + c.checks[i];
  out += fmt::format("checks.select = {}\n", checks);
  out += fmt::format("checks.k = {}\nchecks.h = {}\nchecks.tolerance = {}\n", fmt_list(c.check_k),
                     fmt_list(c.tail_h), c.check_tolerance);
  out += fmt::format("checks.trajectory = {}\nchecks.alt_trajectory = {}\n", c.trajectory_path,
                     c.alt_trajectory_path);
  out += fmt::format("checks.phi.center = {}, {}\nchecks.phi.radius = {}\nchecks.phi.amplitude = {}\n",
                     c.phi_center[0], c.phi_center[1], c.phi_radius, c.phi_amplitude);
  out += fmt::format("checks.poincare_samples = {}\n", c.poincare_samples);
  out += fmt::format("solver.tolerance = {}\nsolver.max_iterations = {}\n",
                     c.solver.relative_tolerance, c.solver.max_iterations);
  std::string sizes;
  for (std::size_t i = 0; i < c.bench_sizes.size(); ++i)
    sizes += (i ? ", " : "") + std::to_string(c.bench_sizes[i]);
  out += fmt::format("bench.sizes = {}\nbench.repeats = {}\nbench.applies = {}\n", sizes,
                     c.bench_repeats, c.bench_applies);
  out += fmt::format("output.dir = {}\nseed = {}\nthreads = {}\n", c.output_dir, c.seed, c.threads);
  return out;
}

}  // namespace fracp::experiment
