#include "fieldmap/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fieldmap::metrics {

namespace {

void check_same_grid(const FieldGrid& a, const FieldGrid& b) {
  if (a.values().rows() != b.values().rows() || a.values().cols() != b.values().cols())
    throw std::invalid_argument("metrics: field shapes differ");
}

Eigen::VectorXd gaussian_taps(int window, double sigma) {
  Eigen::VectorXd taps(window);
  const int half = window / 2;
  for (int i = 0; i < window; ++i) {
    const double d = i - half;
    taps(i) = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return taps / taps.sum();
}

// Separable valid-mode filtering along both axes.
Eigen::MatrixXd filter_valid(const Eigen::MatrixXd& in, const Eigen::VectorXd& taps) {
  const Eigen::Index w = taps.size();
  const Eigen::Index rows = in.rows() - w + 1;
  const Eigen::Index cols = in.cols() - w + 1;
  Eigen::MatrixXd tmp = Eigen::MatrixXd::Zero(rows, in.cols());
  for (Eigen::Index t = 0; t < w; ++t) tmp += taps(t) * in.middleRows(t, rows);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index t = 0; t < w; ++t) out += taps(t) * tmp.middleCols(t, cols);
  return out;
}

}  // namespace

void SsimParams::validate() const {
  if (window < 3 || window % 2 == 0) throw std::invalid_argument("ssim: window must be odd and >= 3");
  if (!(window_sigma > 0.0)) throw std::invalid_argument("ssim: window_sigma must be positive");
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw std::invalid_argument("ssim: k1 and k2 must be positive");
  if (dynamic_range && !(*dynamic_range > 0.0)) throw std::invalid_argument("ssim: dynamic_range must be positive");
}

double mse(const FieldGrid& truth, const FieldGrid& estimate) {
  check_same_grid(truth, estimate);
  return (truth.values() - estimate.values()).squaredNorm() / static_cast<double>(truth.values().size());
}

double resolve_dynamic_range(const FieldGrid& truth, const SsimParams& params) {
  if (params.dynamic_range) return *params.dynamic_range;
  const double range = truth.values().maxCoeff() - truth.values().minCoeff();
  // A constant truth field has no range; fall back to unit range.
  return range > 0.0 ? range : 1.0;
}

double ssim(const FieldGrid& truth, const FieldGrid& estimate, const SsimParams& params) {
  params.validate();
  check_same_grid(truth, estimate);
  const auto& x = truth.values();
  const auto& y = estimate.values();
  if (x.rows() < params.window || x.cols() < params.window)
    throw std::invalid_argument("ssim: grid " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                " is smaller than the " + std::to_string(params.window) + "-point window");

  const double range = resolve_dynamic_range(truth, params);
  const double c1 = (params.k1 * range) * (params.k1 * range);
  const double c2 = (params.k2 * range) * (params.k2 * range);
  const Eigen::VectorXd taps = gaussian_taps(params.window, params.window_sigma);

  const Eigen::ArrayXXd mu_x = filter_valid(x, taps).array();
  const Eigen::ArrayXXd mu_y = filter_valid(y, taps).array();
  const Eigen::ArrayXXd var_x = filter_valid(x.cwiseProduct(x), taps).array() - mu_x * mu_x;
  const Eigen::ArrayXXd var_y = filter_valid(y.cwiseProduct(y), taps).array() - mu_y * mu_y;
  const Eigen::ArrayXXd cov = filter_valid(x.cwiseProduct(y), taps).array() - mu_x * mu_y;

  const Eigen::ArrayXXd num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2);
  const Eigen::ArrayXXd den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2);
  return (num / den).mean();
}

}  // namespace fieldmap::metrics
