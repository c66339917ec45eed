#pragma once

#include "fieldmap/grid.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace fieldmap::rbf {

/// Gaussian radial basis field model sum_j w_j exp(-|c_j - x|^2 / sigma_j^2)
/// with fixed centers and widths.
class RbfModel {
 public:
  RbfModel(std::vector<Point> centers, std::vector<double> widths, Eigen::VectorXd weights);

  std::size_t size() const { return centers_.size(); }
  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<double>& widths() const { return widths_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  RbfModel with_weights(Eigen::VectorXd weights) const;

  double kernel(std::size_t j, Point p) const;

 private:
  std::vector<Point> centers_;
  std::vector<double> widths_;
  Eigen::VectorXd weights_;
};

/// Raised when the design matrix is numerically rank deficient.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double condition) : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// j_x by j_y centers at the midpoints of a uniform partition of the region,
/// each with width max(dx, dy) where dx, dy are the partition cell sizes.
/// Centers are ordered x-major to match grid indexing.
RbfModel rbf_grid_layout(int j_x, int j_y, const GridSpec& spec);

double rbf_eval(const RbfModel& model, Point p);

/// |S_d| by J matrix of kernel values; rows follow grid order (I_x major).
Eigen::MatrixXd design_matrix(const RbfModel& model, const GridSpec& spec);

/// Least-squares weights over every cell midpoint of the field's grid.
RbfModel fit_rbf(const RbfModel& model, const FieldGrid& field);

/// Evaluate the model at every cell midpoint.
FieldGrid rbf_field(const RbfModel& model, const GridSpec& spec);

}  // namespace fieldmap::rbf
