#include "fieldmap/planner.hpp"

#include "fieldmap/estimator.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fieldmap::planner {

void PlannerConfig::validate(const GridSpec& spec) const {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw std::invalid_argument("planner: rho0 must be positive");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("planner: epsilon must lie in [0, 1]");
  if (candidates.empty()) throw std::invalid_argument("planner: candidate list is empty");
  for (const auto& c : candidates) spec.check(c);
}

std::vector<PositionIndex> lattice_candidates(int n_cx, int n_cy, const GridSpec& spec) {
  if (n_cx < 1 || n_cy < 1) throw std::invalid_argument("lattice_candidates: counts must be >= 1");
  const double dx = (spec.x_max() - spec.x_min()) / n_cx;
  const double dy = (spec.y_max() - spec.y_min()) / n_cy;
  std::vector<PositionIndex> out;
  out.reserve(static_cast<std::size_t>(n_cx) * n_cy);
  for (int i = 0; i < n_cx; ++i)
    for (int j = 0; j < n_cy; ++j)
      out.push_back(spec.closest({spec.x_min() + (0.5 + i) * dx, spec.y_min() + (0.5 + j) * dy}));
  return out;
}

VehicleState VehicleState::start(PositionIndex start, const GridSpec& spec) {
  spec.check(start);
  const Point p = spec.anchor(start);
  return VehicleState{p, start, start, p};
}

namespace {

double predicted_curvature(const Eigen::VectorXd& beta_next, const Eigen::VectorXd& k_vec,
                           const sensing::Quantizer& q, double eta) {
  const double prediction = beta_next.dot(k_vec);
  return estimator::stage_scalars(prediction, q(prediction), q, eta).curvature;
}

}  // namespace

Eigen::MatrixXd predicted_hessian(const Eigen::MatrixXd& h_k, const Eigen::VectorXd& beta_next,
                                  PositionIndex candidate, const sensing::Quantizer& q, double eta,
                                  const dct::ModeSet& modes, const GridSpec& spec) {
  const Eigen::VectorXd k_vec = dct::basis_vector(candidate, modes, spec);
  const Eigen::VectorXd w = std::sqrt(predicted_curvature(beta_next, k_vec, q, eta)) * k_vec;
  Eigen::MatrixXd out = h_k;
  out.noalias() += w * w.transpose();
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigen solver failed");
  return solver.eigenvalues()(0);
}

RankOneMinEigen::RankOneMinEigen(const Eigen::MatrixXd& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("RankOneMinEigen: eigen solver failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

double RankOneMinEigen::with_update(const Eigen::VectorXd& w) const {
  const Eigen::VectorXd proj = eigenvectors_.transpose() * w;
  const Eigen::VectorXd weight = proj.array().square();
  const double total = weight.sum();
  const Eigen::Index n = eigenvalues_.size();
  const double d0 = eigenvalues_(0);
  if (total == 0.0 || n == 1) return n == 1 ? d0 + total : d0;

  const double scale = std::max(std::abs(eigenvalues_(n - 1)), total);
  const double cluster_tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  // A repeated smallest eigenvalue keeps a direction orthogonal to w.
  if (eigenvalues_(1) - d0 <= cluster_tol) return d0;

  // The smallest root of 1 + sum_i weight_i / (d_i - lambda) lies in
  // (d_0, min(d_1, d_0 + |w|^2)]; the secular function increases there.
  double lo = d0;
  double hi = std::min(eigenvalues_(1), d0 + total);
  for (int iter = 0; iter < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * scale; ++iter) {
    const double mid = 0.5 * (lo + hi);
    double f = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) f += weight(i) / (eigenvalues_(i) - mid);
    if (f < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> candidate_scores(const Eigen::MatrixXd& h_k, const Eigen::VectorXd& beta_next,
                                     const PlannerConfig& cfg, const sensing::Quantizer& q, double eta,
                                     const dct::ModeBasis& basis) {
  std::vector<double> scores;
  scores.reserve(cfg.candidates.size());
  if (cfg.eigen_method == EigenMethod::direct) {
    for (const auto& c : cfg.candidates)
      scores.push_back(min_eigenvalue(predicted_hessian(h_k, beta_next, c, q, eta, basis.modes(), basis.spec())));
    return scores;
  }
  const RankOneMinEigen base(h_k);
  for (const auto& c : cfg.candidates) {
    const Eigen::VectorXd k_vec = basis.vector(c);
    scores.push_back(base.with_update(std::sqrt(predicted_curvature(beta_next, k_vec, q, eta)) * k_vec));
  }
  return scores;
}

PositionIndex select_target(const Eigen::MatrixXd& h_k, const Eigen::VectorXd& beta_next, const PlannerConfig& cfg,
                            const sensing::Quantizer& q, double eta, const dct::ModeBasis& basis, Rng& rng) {
  if (cfg.candidates.empty()) throw std::invalid_argument("select_target: no candidates");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < cfg.epsilon) {
    const GridSpec& spec = basis.spec();
    std::uniform_int_distribution<int> ux(0, spec.n_x() - 1);
    std::uniform_int_distribution<int> uy(0, spec.n_y() - 1);
    const int ix = ux(rng);
    return {ix, uy(rng)};
  }
  if (cfg.candidates.size() == 1) return cfg.candidates.front();
  const std::vector<double> scores = candidate_scores(h_k, beta_next, cfg, q, eta, basis);
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return cfg.candidates[best];
}

namespace {

// Move rho0 toward the target, or onto it when it is closer than rho0.
void step_toward(VehicleState& v, double rho0, const GridSpec& spec, PositionIndex& next) {
  const double d = distance(v.position, v.target_point);
  if (d < rho0) {
    v.position = v.target_point;
    next = v.target;
    return;
  }
  v.position.x += rho0 * (v.target_point.x - v.position.x) / d;
  v.position.y += rho0 * (v.target_point.y - v.position.y) / d;
  next = spec.closest(v.position);
}

}  // namespace

Advance advance(const VehicleState& vehicle, const Eigen::VectorXd& beta_next, const PlannerConfig& cfg,
                const Eigen::MatrixXd& h_k, const sensing::Quantizer& q, double eta, const dct::ModeBasis& basis,
                Rng& rng) {
  const GridSpec& spec = basis.spec();
  Advance out{vehicle, vehicle.index, false};
  VehicleState& v = out.vehicle;
  if (v.index == v.target) {
    v.target = select_target(h_k, beta_next, cfg, q, eta, basis, rng);
    v.target_point = spec.anchor(v.target);
    out.new_target = true;
  }
  step_toward(v, cfg.rho0, spec, out.next);
  v.index = out.next;
  return out;
}

}  // namespace fieldmap::planner
