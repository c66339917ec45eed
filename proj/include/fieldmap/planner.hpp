#pragma once

#include "fieldmap/dct.hpp"
#include "fieldmap/grid.hpp"
#include "fieldmap/rng.hpp"
#include "fieldmap/sensing.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fieldmap::planner {

enum class EigenMethod {
  direct,    // full symmetric eigendecomposition of every predicted Hessian
  rank_one,  // one decomposition of H_k, then a secular-equation solve per candidate
};

struct PlannerConfig {
  double rho0 = 10.0;
  std::vector<PositionIndex> candidates;
  double epsilon = 0.1;
  EigenMethod eigen_method = EigenMethod::rank_one;

  void validate(const GridSpec& spec) const;
};

/// Indices closest to an n_cx by n_cy lattice of cell midpoints over the region.
std::vector<PositionIndex> lattice_candidates(int n_cx, int n_cy, const GridSpec& spec);

struct VehicleState {
  Point position;          // x_k
  PositionIndex index;     // I_{x,k}, the index of the current measurement
  PositionIndex target;    // I_x^target
  Point target_point;      // x^target

  /// Vehicle parked on start with the target initialised to start, so the
  /// first advance selects a fresh target.
  static VehicleState start(PositionIndex start, const GridSpec& spec);
};

/// H_k + hess g(beta_next; candidate, zhat) with zhat = q(beta_next^T K(candidate)).
Eigen::MatrixXd predicted_hessian(const Eigen::MatrixXd& h_k, const Eigen::VectorXd& beta_next,
                                  PositionIndex candidate, const sensing::Quantizer& q, double eta,
                                  const dct::ModeSet& modes, const GridSpec& spec);

double min_eigenvalue(const Eigen::MatrixXd& sym);

/// lambda_min(H + w w^T) for many w against one symmetric H.
class RankOneMinEigen {
 public:
  explicit RankOneMinEigen(const Eigen::MatrixXd& h);
  double base() const { return eigenvalues_(0); }
  double with_update(const Eigen::VectorXd& w) const;

 private:
  Eigen::VectorXd eigenvalues_;   // ascending
  Eigen::MatrixXd eigenvectors_;  // columns
};

/// Minimum eigenvalue of the predicted Hessian for every candidate, in order.
std::vector<double> candidate_scores(const Eigen::MatrixXd& h_k, const Eigen::VectorXd& beta_next,
                                     const PlannerConfig& cfg, const sensing::Quantizer& q, double eta,
                                     const dct::ModeBasis& basis);

/// With probability epsilon a uniformly random grid index, otherwise the
/// candidate maximising min-eigenvalue of the predicted Hessian (first wins ties).
PositionIndex select_target(const Eigen::MatrixXd& h_k, const Eigen::VectorXd& beta_next, const PlannerConfig& cfg,
                            const sensing::Quantizer& q, double eta, const dct::ModeBasis& basis, Rng& rng);

struct Advance {
  VehicleState vehicle;
  PositionIndex next;  // I_{x,k+1}
  bool new_target = false;
};

/// One move of the vehicle: pick a new target when the current index is the
/// target, land on the target when it is closer than rho0, otherwise step
/// rho0 toward it. h_k must already include the damping term.
Advance advance(const VehicleState& vehicle, const Eigen::VectorXd& beta_next, const PlannerConfig& cfg,
                const Eigen::MatrixXd& h_k, const sensing::Quantizer& q, double eta, const dct::ModeBasis& basis,
                Rng& rng);

}  // namespace fieldmap::planner
