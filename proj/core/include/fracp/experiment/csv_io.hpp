#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fracp/cascade.hpp"
#include "fracp/checks.hpp"
#include "fracp/evolution.hpp"
#include "fracp/kernel.hpp"

namespace fracp::experiment {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// node,x[,y],value
void write_field_csv(const std::filesystem::path& path, const Field& field);

/// step,time,node,x[,y],value -- every node of every stored state.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Reads a trajectory written by write_trajectory_csv. Throws
/// std::runtime_error when node count, coordinates or exterior zeros do not
/// match `grid`.
Trajectory read_trajectory_csv(const std::filesystem::path& path, const GridPtr& grid);

/// i,j,distance,s_ij,sigma_ij
void write_kernel_csv(const std::filesystem::path& path, const KernelTable& kernel);

/// node,x[,y],tail,exterior_mass,lower_bound (interior nodes only)
void write_kernel_nodes_csv(const std::filesystem::path& path, const KernelTable& kernel);

/// name,lhs,rhs,slack,verdict
void write_checks_csv(const std::filesystem::path& path, const std::vector<CheckReport>& reports);
void write_checks_text(const std::filesystem::path& path, const std::vector<CheckReport>& reports);

/// cascade.csv:             n,m,sup_l1_distance,contraction_bound,slack
/// cascade_energy.csv:      n,k,lhs,rhs,slack,verdict
/// cascade_convergence.csv: n,k,truncated_seminorm_to_finest
std::vector<std::filesystem::path> write_cascade_csv(const std::filesystem::path& dir,
                                                     const CascadeReport& report);

}  // namespace fracp::experiment
