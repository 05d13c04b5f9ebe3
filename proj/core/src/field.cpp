#include "fracp/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracp {

Field::Field(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  values_.assign(grid_->node_count(), 0.0);
}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  if (values_.size() != grid_->node_count())
    throw std::invalid_argument("Field: expected " + std::to_string(grid_->node_count()) +
                                " values, got " + std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!grid_->is_interior(i) && values_[i] != 0.0)
      throw std::invalid_argument("Field: nonzero value at exterior node " + std::to_string(i));
}

Field Field::from_function(GridPtr grid, const std::function<double(const Point&)>& f) {
  Field out(std::move(grid));
  for (std::size_t i : out.grid_->interior_nodes()) out.values_[i] = f(out.grid_->node(i));
  return out;
}

void Field::set(std::size_t i, double value) {
  if (!grid_->is_interior(i) && value != 0.0)
    throw std::invalid_argument("Field::set: exterior node " + std::to_string(i) +
                                " must stay zero");
  values_[i] = value;
}

Field Field::map(const std::function<double(double)>& f) const {
  Field out(grid_);
  for (std::size_t i : grid_->interior_nodes()) out.values_[i] = f(values_[i]);
  return out;
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other, "Field::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other, "Field::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double factor) {
  for (std::size_t i : grid_->interior_nodes()) values_[i] *= factor;
  return *this;
}

double Field::l1_norm() const {
  double s = 0.0;
  for (std::size_t i : grid_->interior_nodes()) s += std::abs(values_[i]);
  return grid_->cell_volume() * s;
}

double Field::l2_norm() const {
  double s = 0.0;
  for (std::size_t i : grid_->interior_nodes()) s += values_[i] * values_[i];
  return std::sqrt(grid_->cell_volume() * s);
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double factor, Field a) { return a *= factor; }

double inner(const Field& u, const Field& v) {
  require_same_grid(u, v, "inner");
  double s = 0.0;
  for (std::size_t i : u.grid().interior_nodes()) s += u[i] * v[i];
  return u.grid().cell_volume() * s;
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!a.grid_ptr() || a.grid_ptr() != b.grid_ptr())
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

void require_grid(const Grid& expected, const Field& f, const char* what) {
  if (!f.grid_ptr() || f.grid_ptr().get() != &expected)
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace fracp
