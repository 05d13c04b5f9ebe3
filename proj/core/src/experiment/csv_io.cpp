#include "fracp/experiment/csv_io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracp::experiment {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string coord_header(int dim) { return dim == 2 ? "x,y" : "x"; }

std::string coords(const Point& x, int dim) {
  return dim == 2 ? format_number(x[0]) + "," + format_number(x[1]) : format_number(x[0]);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

double parse_number(const std::string& s, const std::filesystem::path& path, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(fmt::format("{}:{}: bad number '{}'", path.string(), line, s));
  return v;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{}", v); }

void write_field_csv(const std::filesystem::path& path, const Field& field) {
  auto out = open_out(path);
  const int dim = field.grid().dimension();
  out << "node," << coord_header(dim) << ",value\n";
  for (std::size_t i = 0; i < field.size(); ++i)
    out << i << ',' << coords(field.grid().node(i), dim) << ',' << format_number(field[i]) << '\n';
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_out(path);
  if (traj.states.empty()) throw std::invalid_argument("write_trajectory_csv: empty trajectory");
  const Grid& g = traj.states.front().grid();
  const int dim = g.dimension();
  out << "step,time," << "node," << coord_header(dim) << ",value\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const std::string prefix =
        std::to_string(k) + "," + format_number(traj.time(static_cast<int>(k))) + ",";
    const Field& u = traj.states[k];
    for (std::size_t i = 0; i < u.size(); ++i)
      out << prefix << i << ',' << coords(g.node(i), dim) << ',' << format_number(u[i]) << '\n';
  }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory '" + path.string() + "'");
  const int dim = grid->dimension();
  const std::size_t cols = dim == 2 ? 6 : 5;
  std::string line;
  std::getline(in, line);
  if (split(line).size() != cols)
    throw std::runtime_error(path.string() + ": header does not match a " + std::to_string(dim) +
                             "-D grid");

  Trajectory traj;
  std::vector<double> values;
  std::vector<double> times;
  int line_no = 1;
  std::size_t expected_step = 0;
  auto flush = [&] {
    if (values.size() != grid->node_count())
      throw std::runtime_error(fmt::format("{}: step {} has {} nodes, grid has {}", path.string(),
                                           expected_step, values.size(), grid->node_count()));
    try {
      traj.states.emplace_back(grid, std::move(values));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
    values.clear();
    ++expected_step;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != cols)
      throw std::runtime_error(fmt::format("{}:{}: expected {} columns", path.string(), line_no, cols));
    const auto step = static_cast<std::size_t>(parse_number(cells[0], path, line_no));
    if (step != expected_step) {
      if (step != expected_step + 1 || values.empty())
        throw std::runtime_error(fmt::format("{}:{}: steps out of order", path.string(), line_no));
      flush();
    }
    if (values.empty()) times.push_back(parse_number(cells[1], path, line_no));
    const auto node = static_cast<std::size_t>(parse_number(cells[2], path, line_no));
    if (node != values.size() || node >= grid->node_count())
      throw std::runtime_error(fmt::format("{}:{}: unexpected node index", path.string(), line_no));
    const Point& x = grid->node(node);
    for (int a = 0; a < dim; ++a) {
      const double c = parse_number(cells[3 + a], path, line_no);
      if (std::abs(c - x[a]) > 1e-9 * (1.0 + std::abs(x[a])))
        throw std::runtime_error(
            fmt::format("{}:{}: node coordinates do not match the grid", path.string(), line_no));
    }
    values.push_back(parse_number(cells[cols - 1], path, line_no));
  }
  if (!values.empty()) flush();
  if (traj.states.size() < 2)
    throw std::runtime_error(path.string() + ": trajectory needs at least two states");
  traj.tau = times[1] - times[0];
  traj.diagnostics.assign(traj.states.size() - 1, StepDiagnostics{0, 0.0, true});
  return traj;
}

void write_kernel_csv(const std::filesystem::path& path, const KernelTable& kernel) {
  auto out = open_out(path);
  const Grid& g = kernel.grid();
  out << "i,j,distance,s_ij,sigma_ij\n";
  const auto& pairs = g.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    out << i << ',' << j << ',' << format_number(g.distance(i, j)) << ','
        << format_number(kernel.orders()[k]) << ',' << format_number(kernel.weights()[k]) << '\n';
  }
}

void write_kernel_nodes_csv(const std::filesystem::path& path, const KernelTable& kernel) {
  auto out = open_out(path);
  const Grid& g = kernel.grid();
  const int dim = g.dimension();
  const double bound =
      exterior_mass_lower_bound(dim, kernel.p(), kernel.s_plus(), g.domain_measure());
  out << "node," << coord_header(dim) << ",tail,exterior_mass,lower_bound\n";
  for (std::size_t i : g.interior_nodes())
    out << i << ',' << coords(g.node(i), dim) << ',' << format_number(kernel.tail(i)) << ','
        << format_number(exterior_mass(kernel, i)) << ',' << format_number(bound) << '\n';
}

void write_checks_csv(const std::filesystem::path& path, const std::vector<CheckReport>& reports) {
  auto out = open_out(path);
  out << "name,lhs,rhs,slack,verdict\n";
  for (const auto& r : reports)
    out << r.name << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
        << format_number(r.slack) << ',' << (r.passed ? "pass" : "fail") << '\n';
}

void write_checks_text(const std::filesystem::path& path, const std::vector<CheckReport>& reports) {
  auto out = open_out(path);
  std::size_t failed = 0;
  for (const auto& r : reports) {
    out << r.text() << '\n';
    if (!r.passed) ++failed;
  }
  out << reports.size() - failed << " passed, " << failed << " failed\n";
}

std::vector<std::filesystem::path> write_cascade_csv(const std::filesystem::path& dir,
                                                     const CascadeReport& report) {
  const auto main_path = dir / "cascade.csv";
  const auto energy_path = dir / "cascade_energy.csv";
  const auto conv_path = dir / "cascade_convergence.csv";
  {
    auto out = open_out(main_path);
    out << "n,m,sup_l1_distance,contraction_bound,slack\n";
    for (const auto& d : report.distances)
      out << format_number(d.n) << ',' << format_number(d.m) << ',' << format_number(d.check.lhs)
          << ',' << format_number(d.check.rhs) << ',' << format_number(d.check.slack) << '\n';
  }
  {
    auto out = open_out(energy_path);
    out << "n,k,lhs,rhs,slack,verdict\n";
    for (const auto& e : report.energy)
      out << format_number(e.n) << ',' << format_number(e.k) << ',' << format_number(e.check.lhs)
          << ',' << format_number(e.check.rhs) << ',' << format_number(e.check.slack) << ','
          << (e.check.passed ? "pass" : "fail") << '\n';
  }
  {
    auto out = open_out(conv_path);
    out << "n,k,truncated_seminorm_to_finest\n";
    for (const auto& c : report.convergence)
      out << format_number(c.n) << ',' << format_number(c.k) << ',' << format_number(c.seminorm)
          << '\n';
  }
  return {main_path, energy_path, conv_path};
}

}  // namespace fracp::experiment
