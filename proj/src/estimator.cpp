#include "fieldmap/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace fieldmap::estimator {

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

// 1 / (1 + exp(-x)).
double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// exp(x) / (1 + exp(x))^2, symmetric in x.
double logistic_slope(double x) {
  const double e = std::exp(-std::abs(x));
  return e / ((1.0 + e) * (1.0 + e));
}

void check_level(int z, const sensing::Quantizer& q) {
  if (z < 0 || z >= q.levels())
    throw std::out_of_range("measurement level " + std::to_string(z) + " outside [0, " +
                            std::to_string(q.levels() - 1) + "]");
}

void check_lengths(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec) {
  if (beta.size() != k_vec.size()) throw std::invalid_argument("beta and basis vector lengths differ");
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("estimator: eta must be positive");
  if (!(sigma_lm > 0.0) || !std::isfinite(sigma_lm)) throw std::invalid_argument("estimator: sigma_lm must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("estimator: delta must lie in (0, 1]");
}

EstimatorState EstimatorState::initial(dct::ModeSet modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  return EstimatorState{std::move(modes), Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n), 0};
}

StageScalars stage_scalars(double prediction, int z, const sensing::Quantizer& q, double eta) {
  check_level(z, q);
  StageScalars s{0.0, 0.0, 0.0};
  // Penalty for lying above the cell's upper threshold.
  if (z < q.levels() - 1) {
    const double x = eta * (prediction - q.threshold(z));
    s.cost += softplus(x);
    s.slope += eta * logistic(x);
    s.curvature += eta * eta * logistic_slope(x);
  }
  // Penalty for lying below the cell's lower threshold.
  if (z > 0) {
    const double x = eta * (prediction - q.threshold(z - 1));
    s.cost += softplus(-x);
    s.slope -= eta * logistic(-x);
    s.curvature += eta * eta * logistic_slope(x);
  }
  return s;
}

double per_stage_cost(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec, int z,
                      const sensing::Quantizer& q, double eta) {
  check_lengths(beta, k_vec);
  return stage_scalars(beta.dot(k_vec), z, q, eta).cost;
}

Eigen::VectorXd per_stage_gradient(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec, int z,
                                   const sensing::Quantizer& q, double eta) {
  check_lengths(beta, k_vec);
  return stage_scalars(beta.dot(k_vec), z, q, eta).slope * k_vec;
}

Eigen::MatrixXd per_stage_hessian(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec, int z,
                                  const sensing::Quantizer& q, double eta) {
  check_lengths(beta, k_vec);
  const Eigen::VectorXd w = std::sqrt(stage_scalars(beta.dot(k_vec), z, q, eta).curvature) * k_vec;
  return w * w.transpose();
}

Eigen::MatrixXd regularized_hessian(const EstimatorState& state, const EstimatorConfig& cfg) {
  Eigen::MatrixXd h = state.h_tilde;
  h.diagonal().array() += cfg.sigma_lm;
  return h;
}

EstimatorState newton_update(const EstimatorState& state, const EstimatorConfig& cfg, const Eigen::VectorXd& k_vec,
                             int z, const sensing::Quantizer& q) {
  check_lengths(state.beta_hat, k_vec);
  const StageScalars s = stage_scalars(state.beta_hat.dot(k_vec), z, q, cfg.eta);

  EstimatorState next{state.modes, state.beta_hat, cfg.delta * state.h_tilde, state.k + 1};
  const Eigen::VectorXd w = std::sqrt(s.curvature) * k_vec;
  next.h_tilde.noalias() += w * w.transpose();

  const Eigen::LLT<Eigen::MatrixXd> llt(regularized_hessian(next, cfg));
  if (llt.info() != Eigen::Success)
    throw FactorizationError("newton_update: H_k is not positive definite at k = " + std::to_string(state.k));
  next.beta_hat -= llt.solve(s.slope * k_vec);
  return next;
}

EstimatorState newton_update(const EstimatorState& state, const EstimatorConfig& cfg, PositionIndex idx, int z,
                             const sensing::Quantizer& q, const GridSpec& spec) {
  return newton_update(state, cfg, dct::basis_vector(idx, state.modes, spec), z, q);
}

EstimatorState refine_modes(const EstimatorState& state, const dct::ModeSet& new_modes) {
  if (new_modes.n_x() != state.modes.n_x() || new_modes.n_y() != state.modes.n_y())
    throw std::invalid_argument("refine_modes: mode sets live on different grids");

  bool expansion = true;
  for (const auto& m : state.modes.modes()) expansion = expansion && new_modes.contains(m);
  bool deletion = true;
  for (const auto& m : new_modes.modes()) deletion = deletion && state.modes.contains(m);
  if (!expansion && !deletion)
    throw std::invalid_argument("refine_modes: adding and removing modes in one call is not supported");

  const auto n = static_cast<Eigen::Index>(new_modes.size());
  EstimatorState next{new_modes, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n), state.k};
  // Old index of each new slot, or -1 for a fresh mode.
  std::vector<Eigen::Index> source(new_modes.size(), -1);
  for (std::size_t j = 0; j < new_modes.size(); ++j)
    if (auto old = state.modes.index_of(new_modes[j])) source[j] = static_cast<Eigen::Index>(*old);

  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index si = source[static_cast<std::size_t>(i)];
    if (si < 0) continue;
    next.beta_hat(i) = state.beta_hat(si);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index sj = source[static_cast<std::size_t>(j)];
      if (sj >= 0) next.h_tilde(i, j) = state.h_tilde(si, sj);
    }
  }
  return next;
}

Eigen::VectorXd coefficient_estimates(const EstimatorState& state) {
  return dct::unscale_coeffs(state.beta_hat, state.modes);
}

}  // namespace fieldmap::estimator
