#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fieldmap {

/// Continuous coordinate in the search region.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// Discrete position index (I_x, I_y) into a GridSpec.
struct PositionIndex {
  int ix = 0;
  int iy = 0;
  friend auto operator<=>(const PositionIndex&, const PositionIndex&) = default;
};

/// Rectangular search region [x_min, x_max] x [y_min, y_max] split into
/// n_x by n_y cells. Cell (I_x, I_y) is anchored at its midpoint.
class GridSpec {
 public:
  GridSpec(double x_min, double x_max, double y_min, double y_max, int n_x, int n_y);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }
  std::size_t size() const { return static_cast<std::size_t>(n_x_) * static_cast<std::size_t>(n_y_); }

  double delta_x() const { return (x_max_ - x_min_) / n_x_; }
  double delta_y() const { return (y_max_ - y_min_) / n_y_; }

  bool contains(PositionIndex idx) const {
    return idx.ix >= 0 && idx.ix < n_x_ && idx.iy >= 0 && idx.iy < n_y_;
  }
  bool contains(Point p) const {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }

  /// Throws std::out_of_range when idx is outside the grid.
  void check(PositionIndex idx) const;

  /// Cell midpoint of idx. Throws std::out_of_range outside the grid.
  Point anchor(PositionIndex idx) const;

  /// Nearest cell midpoint to p, ties resolved toward the lower index.
  /// Points outside the region clamp to the border cells.
  PositionIndex closest(Point p) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double x_min_, x_max_, y_min_, y_max_;
  int n_x_, n_y_;
};

/// Dense n_x by n_y array of field values; entry (I_x, I_y) is phi_d(I_x, I_y).
class FieldGrid {
 public:
  FieldGrid(GridSpec spec, Eigen::MatrixXd values);
  static FieldGrid zeros(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(PositionIndex idx) const { return values_(idx.ix, idx.iy); }
  double at(PositionIndex idx) const;

 private:
  GridSpec spec_;
  Eigen::MatrixXd values_;
};

/// Full n_x by n_y table of Type-II DCT coefficients, entry (u, v) = C(u, v).
class DctCoefficients {
 public:
  DctCoefficients(GridSpec spec, Eigen::MatrixXd values);

  const GridSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(int u, int v) const { return values_(u, v); }

 private:
  GridSpec spec_;
  Eigen::MatrixXd values_;
};

}  // namespace fieldmap
