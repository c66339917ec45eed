#pragma once

#include "fieldmap/dct.hpp"
#include "fieldmap/grid.hpp"
#include "fieldmap/sensing.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace fieldmap::estimator {

/// eta: logistic sharpness, sigma_lm: Levenberg-Marquardt damping added every
/// step, delta: forgetting factor applied to the accumulated Hessian.
struct EstimatorConfig {
  double eta = 5.0;
  double sigma_lm = 1.0 / 20000.0;
  double delta = 1.0;

  void validate() const;
};

/// Recursive state of the online Newton estimator. The measurement history is
/// not kept; beta_hat and h_tilde are the sufficient statistics.
struct EstimatorState {
  dct::ModeSet modes;
  Eigen::VectorXd beta_hat;  // scaled coefficients
  Eigen::MatrixXd h_tilde;   // accumulated, forgotten per-stage Hessians
  long k = 0;

  /// beta_hat = 0, h_tilde = 0, k = 0.
  static EstimatorState initial(dct::ModeSet modes);
};

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Derivatives of the per-stage cost with respect to the scalar prediction
/// a = beta^T K. The vector forms are slope * K and curvature * K K^T.
struct StageScalars {
  double cost;
  double slope;
  double curvature;
};

StageScalars stage_scalars(double prediction, int z, const sensing::Quantizer& q, double eta);

double per_stage_cost(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec, int z,
                      const sensing::Quantizer& q, double eta);
Eigen::VectorXd per_stage_gradient(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec, int z,
                                   const sensing::Quantizer& q, double eta);
Eigen::MatrixXd per_stage_hessian(const Eigen::VectorXd& beta, const Eigen::VectorXd& k_vec, int z,
                                  const sensing::Quantizer& q, double eta);

/// h_tilde + sigma_lm * I, the matrix inverted by the Newton step.
Eigen::MatrixXd regularized_hessian(const EstimatorState& state, const EstimatorConfig& cfg);

/// One step with a precomputed basis vector K of the measured position:
///   h_tilde <- delta * h_tilde + hess g(beta_hat)
///   beta_hat <- beta_hat - (h_tilde + sigma_lm I)^{-1} grad g(beta_hat)
EstimatorState newton_update(const EstimatorState& state, const EstimatorConfig& cfg, const Eigen::VectorXd& k_vec,
                             int z, const sensing::Quantizer& q);

EstimatorState newton_update(const EstimatorState& state, const EstimatorConfig& cfg, PositionIndex idx, int z,
                             const sensing::Quantizer& q, const GridSpec& spec);

/// Grow or shrink the mode set, carrying the entries of surviving modes across.
/// Added modes start at zero. A call must be a pure expansion or a pure deletion.
EstimatorState refine_modes(const EstimatorState& state, const dct::ModeSet& new_modes);

/// Unscaled coefficient estimates C_j in ModeSet order.
Eigen::VectorXd coefficient_estimates(const EstimatorState& state);

}  // namespace fieldmap::estimator
