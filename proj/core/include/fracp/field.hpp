#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracp/grid.hpp"

namespace fracp {

/// Nodal values of u at one time instant. Exterior entries are exactly zero;
/// every constructor and mutator enforces this.
class Field {
 public:
  Field() = default;
  /// Zero field on `grid`.
  explicit Field(GridPtr grid);
  /// Throws std::invalid_argument on size mismatch or a nonzero exterior value.
  Field(GridPtr grid, std::vector<double> values);

  /// Samples f at interior nodes; exterior nodes stay zero.
  static Field from_function(GridPtr grid, const std::function<double(const Point&)>& f);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  /// Rejects nonzero writes to exterior nodes.
  void set(std::size_t i, double value);

  /// Applies f to every interior value.
  Field map(const std::function<double(double)>& f) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double factor);

  /// w * sum |u_i|
  double l1_norm() const;
  /// sqrt(w * sum u_i^2)
  double l2_norm() const;
  double max_abs() const;
  double min_value() const;
  double max_value() const;

  bool same_grid(const Field& other) const { return grid_ == other.grid_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double factor, Field a);

/// Weighted inner product w * sum u_i v_i.
double inner(const Field& u, const Field& v);

/// Throws std::invalid_argument("<what>: grid mismatch") unless both fields
/// live on the same Grid object.
void require_same_grid(const Field& a, const Field& b, const char* what);
void require_grid(const Grid& expected, const Field& f, const char* what);

}  // namespace fracp
