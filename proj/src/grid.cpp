#include "fieldmap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fieldmap {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

GridSpec::GridSpec(double x_min, double x_max, double y_min, double y_max, int n_x, int n_y)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), n_x_(n_x), n_y_(n_y) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) && std::isfinite(y_max)))
    throw std::invalid_argument("GridSpec: bounds must be finite");
  if (!(x_max > x_min) || !(y_max > y_min))
    throw std::invalid_argument("GridSpec: max bound must exceed min bound");
  if (n_x < 1 || n_y < 1) throw std::invalid_argument("GridSpec: n_x and n_y must be >= 1");
}

void GridSpec::check(PositionIndex idx) const {
  if (!contains(idx))
    throw std::out_of_range("position index (" + std::to_string(idx.ix) + ", " + std::to_string(idx.iy) +
                            ") outside " + std::to_string(n_x_) + "x" + std::to_string(n_y_) + " grid");
}

Point GridSpec::anchor(PositionIndex idx) const {
  check(idx);
  return {x_min_ + (0.5 + idx.ix) * delta_x(), y_min_ + (0.5 + idx.iy) * delta_y()};
}

namespace {

int nearest_cell(double coord, double lo, double delta, int n) {
  // t is the fractional cell coordinate; cell i sits at t == i.
  const double t = (coord - lo) / delta - 0.5;
  const int i = static_cast<int>(std::ceil(t - 0.5));
  return std::clamp(i, 0, n - 1);
}

}  // namespace

PositionIndex GridSpec::closest(Point p) const {
  return {nearest_cell(p.x, x_min_, delta_x(), n_x_), nearest_cell(p.y, y_min_, delta_y(), n_y_)};
}

namespace {

void check_shape_and_finite(const GridSpec& spec, const Eigen::MatrixXd& values, const char* what) {
  if (values.rows() != spec.n_x() || values.cols() != spec.n_y())
    throw std::invalid_argument(std::string(what) + ": value array is " + std::to_string(values.rows()) + "x" +
                                std::to_string(values.cols()) + ", grid is " + std::to_string(spec.n_x()) + "x" +
                                std::to_string(spec.n_y()));
  if (!values.allFinite()) throw std::invalid_argument(std::string(what) + ": values must be finite");
}

}  // namespace

FieldGrid::FieldGrid(GridSpec spec, Eigen::MatrixXd values) : spec_(spec), values_(std::move(values)) {
  check_shape_and_finite(spec_, values_, "FieldGrid");
}

FieldGrid FieldGrid::zeros(const GridSpec& spec) {
  return FieldGrid(spec, Eigen::MatrixXd::Zero(spec.n_x(), spec.n_y()));
}

double FieldGrid::at(PositionIndex idx) const {
  spec_.check(idx);
  return (*this)(idx);
}

DctCoefficients::DctCoefficients(GridSpec spec, Eigen::MatrixXd values) : spec_(spec), values_(std::move(values)) {
  check_shape_and_finite(spec_, values_, "DctCoefficients");
}

}  // namespace fieldmap
