#include "fieldmap/rbf.hpp"

#include <algorithm>
#include <cmath>

namespace fieldmap::rbf {

RbfModel::RbfModel(std::vector<Point> centers, std::vector<double> widths, Eigen::VectorXd weights)
    : centers_(std::move(centers)), widths_(std::move(widths)), weights_(std::move(weights)) {
  if (centers_.empty()) throw std::invalid_argument("RbfModel: at least one basis function required");
  if (widths_.size() != centers_.size() || static_cast<std::size_t>(weights_.size()) != centers_.size())
    throw std::invalid_argument("RbfModel: centers, widths and weights must have equal length");
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    if (!(widths_[j] > 0.0) || !std::isfinite(widths_[j]))
      throw std::invalid_argument("RbfModel: widths must be finite and positive");
    if (!std::isfinite(centers_[j].x) || !std::isfinite(centers_[j].y))
      throw std::invalid_argument("RbfModel: centers must be finite");
  }
  if (!weights_.allFinite()) throw std::invalid_argument("RbfModel: weights must be finite");
}

RbfModel RbfModel::with_weights(Eigen::VectorXd weights) const { return RbfModel(centers_, widths_, std::move(weights)); }

double RbfModel::kernel(std::size_t j, Point p) const {
  const double dx = centers_[j].x - p.x;
  const double dy = centers_[j].y - p.y;
  const double s = widths_[j];
  return std::exp(-(dx * dx + dy * dy) / (s * s));
}

RbfModel rbf_grid_layout(int j_x, int j_y, const GridSpec& spec) {
  if (j_x < 1 || j_y < 1) throw std::invalid_argument("rbf_grid_layout: j_x and j_y must be >= 1");
  const double dx = (spec.x_max() - spec.x_min()) / j_x;
  const double dy = (spec.y_max() - spec.y_min()) / j_y;
  const double width = std::max(dx, dy);
  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(j_x) * j_y);
  for (int ix = 0; ix < j_x; ++ix)
    for (int iy = 0; iy < j_y; ++iy)
      centers.push_back({spec.x_min() + (0.5 + ix) * dx, spec.y_min() + (0.5 + iy) * dy});
  const std::size_t n = centers.size();
  return RbfModel(std::move(centers), std::vector<double>(n, width),
                  Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));
}

double rbf_eval(const RbfModel& model, Point p) {
  double sum = 0.0;
  for (std::size_t j = 0; j < model.size(); ++j) sum += model.weights()(static_cast<Eigen::Index>(j)) * model.kernel(j, p);
  return sum;
}

Eigen::MatrixXd design_matrix(const RbfModel& model, const GridSpec& spec) {
  Eigen::MatrixXd k(static_cast<Eigen::Index>(spec.size()), static_cast<Eigen::Index>(model.size()));
  Eigen::Index row = 0;
  for (int ix = 0; ix < spec.n_x(); ++ix)
    for (int iy = 0; iy < spec.n_y(); ++iy, ++row) {
      const Point p = spec.anchor({ix, iy});
      for (std::size_t j = 0; j < model.size(); ++j) k(row, static_cast<Eigen::Index>(j)) = model.kernel(j, p);
    }
  return k;
}

RbfModel fit_rbf(const RbfModel& model, const FieldGrid& field) {
  const GridSpec& spec = field.spec();
  const Eigen::MatrixXd k = design_matrix(model, spec);
  Eigen::VectorXd phi(static_cast<Eigen::Index>(spec.size()));
  Eigen::Index row = 0;
  for (int ix = 0; ix < spec.n_x(); ++ix)
    for (int iy = 0; iy < spec.n_y(); ++iy) phi(row++) = field.values()(ix, iy);

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(k);
  const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
  const double condition = diag.size() ? diag.maxCoeff() / diag.minCoeff() : 0.0;
  if (qr.rank() < k.cols())
    throw FitError("fit_rbf: design matrix has rank " + std::to_string(qr.rank()) + " < " +
                       std::to_string(k.cols()) + " (condition estimate " + std::to_string(condition) + ")",
                   condition);
  return model.with_weights(qr.solve(phi));
}

FieldGrid rbf_field(const RbfModel& model, const GridSpec& spec) {
  Eigen::MatrixXd values(spec.n_x(), spec.n_y());
  for (int ix = 0; ix < spec.n_x(); ++ix)
    for (int iy = 0; iy < spec.n_y(); ++iy) values(ix, iy) = rbf_eval(model, spec.anchor({ix, iy}));
  return FieldGrid(spec, std::move(values));
}

}  // namespace fieldmap::rbf
