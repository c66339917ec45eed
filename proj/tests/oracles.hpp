#pragma once

// Independent reference implementations used only by the tests. They follow
// the defining formulas literally and share no code with the library.

#include "fieldmap/dct.hpp"
#include "fieldmap/grid.hpp"
#include "fieldmap/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline double alpha(int u, int n) { return u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n); }

inline double cosine(int u, int i, int n) { return std::cos((2.0 * i + 1.0) * std::numbers::pi * u / (2.0 * n)); }

/// C(u,v) by the quadruple loop over the defining double sum.
inline Eigen::MatrixXd dct(const Eigen::MatrixXd& phi) {
  const int nx = static_cast<int>(phi.rows()), ny = static_cast<int>(phi.cols());
  Eigen::MatrixXd c(nx, ny);
  for (int u = 0; u < nx; ++u)
    for (int v = 0; v < ny; ++v) {
      double s = 0.0;
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) s += phi(i, j) * cosine(u, i, nx) * cosine(v, j, ny);
      c(u, v) = alpha(u, nx) * alpha(v, ny) * s;
    }
  return c;
}

inline Eigen::MatrixXd idct(const Eigen::MatrixXd& c) {
  const int nx = static_cast<int>(c.rows()), ny = static_cast<int>(c.cols());
  Eigen::MatrixXd phi(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double s = 0.0;
      for (int u = 0; u < nx; ++u)
        for (int v = 0; v < ny; ++v) s += alpha(u, nx) * alpha(v, ny) * c(u, v) * cosine(u, i, nx) * cosine(v, j, ny);
      phi(i, j) = s;
    }
  return phi;
}

/// K_j(I) written out from the scaled-coefficient model.
inline Eigen::VectorXd basis(fieldmap::PositionIndex idx, const fieldmap::dct::ModeSet& modes) {
  Eigen::VectorXd k(static_cast<Eigen::Index>(modes.size()));
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const auto m = modes[j];
    const double score = (m.u + 1.0) * (m.u + 1.0) + (m.v + 1.0) * (m.v + 1.0);
    k(static_cast<Eigen::Index>(j)) = alpha(m.u, modes.n_x()) * alpha(m.v, modes.n_y()) *
                                      cosine(m.u, idx.ix, modes.n_x()) * cosine(m.v, idx.iy, modes.n_y()) / score;
  }
  return k;
}

/// Two-level cost: log(1+exp(eta(a-tau))) for z = 0, log(1+exp(-eta(a-tau))) for z = 1.
inline double binary_cost(double a, int z, double tau, double eta) {
  return z == 0 ? std::log(1.0 + std::exp(eta * (a - tau))) : std::log(1.0 + std::exp(-eta * (a - tau)));
}

/// d cost / d a.
inline double binary_slope(double a, int z, double tau, double eta) {
  return z == 0 ? eta / (1.0 + std::exp(-eta * (a - tau))) : -eta / (1.0 + std::exp(eta * (a - tau)));
}

/// d^2 cost / d a^2; identical for both levels.
inline double binary_curvature(double a, double tau, double eta) {
  const double e = std::exp(eta * (a - tau));
  return eta * eta * e / ((1.0 + e) * (1.0 + e));
}

/// Mean SSIM evaluated window by window with a full 2-D Gaussian weight
/// table; no separable filtering.
inline double ssim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int window, double sigma, double k1, double k2,
                   double range) {
  const int r = window / 2;
  Eigen::MatrixXd w(window, window);
  for (int i = 0; i < window; ++i)
    for (int j = 0; j < window; ++j)
      w(i, j) = std::exp(-((i - r) * (i - r) + (j - r) * (j - r)) / (2.0 * sigma * sigma));
  w /= w.sum();
  const double c1 = (k1 * range) * (k1 * range), c2 = (k2 * range) * (k2 * range);
  double total = 0.0;
  int count = 0;
  for (int x0 = 0; x0 + window <= a.rows(); ++x0)
    for (int y0 = 0; y0 + window <= a.cols(); ++y0) {
      double ma = 0, mb = 0;
      for (int i = 0; i < window; ++i)
        for (int j = 0; j < window; ++j) {
          ma += w(i, j) * a(x0 + i, y0 + j);
          mb += w(i, j) * b(x0 + i, y0 + j);
        }
      double va = 0, vb = 0, cab = 0;
      for (int i = 0; i < window; ++i)
        for (int j = 0; j < window; ++j) {
          const double da = a(x0 + i, y0 + j) - ma, db = b(x0 + i, y0 + j) - mb;
          va += w(i, j) * da * da;
          vb += w(i, j) * db * db;
          cab += w(i, j) * da * db;
        }
      total += ((2 * ma * mb + c1) * (2 * cab + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  return total / count;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, fieldmap::Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

inline Eigen::VectorXd random_vector(int n, fieldmap::Rng& rng, double lo = -1.0, double hi = 1.0) {
  return random_matrix(n, 1, rng, lo, hi);
}

/// A random subset of distinct modes in random order.
inline fieldmap::dct::ModeSet random_modes(int count, int nx, int ny, fieldmap::Rng& rng) {
  std::vector<fieldmap::dct::Mode> all;
  for (int u = 0; u < nx; ++u)
    for (int v = 0; v < ny; ++v) all.push_back({u, v});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(count));
  return fieldmap::dct::ModeSet(all, nx, ny);
}

/// Multi-level cost derivatives in the prediction a, written from the
/// unsimplified exponential forms.
inline double multilevel_cost(double a, int z, const std::vector<double>& tau, double eta) {
  const int top = static_cast<int>(tau.size());
  double c = 0.0;
  if (z < top) c += std::log(1.0 + std::exp(eta * (a - tau[z])));
  if (z > 0) c += std::log(1.0 + std::exp(-eta * (a - tau[z - 1])));
  return c;
}

inline double multilevel_slope(double a, int z, const std::vector<double>& tau, double eta) {
  const int top = static_cast<int>(tau.size());
  double s = 0.0;
  if (z < top) s += eta / (1.0 + std::exp(-eta * (a - tau[z])));
  if (z > 0) s += -eta / (1.0 + std::exp(eta * (a - tau[z - 1])));
  return s;
}

inline double multilevel_curvature(double a, int z, const std::vector<double>& tau, double eta) {
  const int top = static_cast<int>(tau.size());
  double h = 0.0;
  if (z < top) {
    const double e = std::exp(-eta * (a - tau[z]));
    h += eta * eta * e / ((1.0 + e) * (1.0 + e));
  }
  if (z > 0) {
    const double e = std::exp(eta * (a - tau[z - 1]));
    h += eta * eta * e / ((1.0 + e) * (1.0 + e));
  }
  return h;
}

/// One random (beta, K, z, thresholds, eta) instance for derivative checks.
struct StageTuple {
  Eigen::VectorXd beta;
  Eigen::VectorXd k;
  int z = 0;
  std::vector<double> tau;
  double eta = 1.0;
};

/// L levels, z chosen by the caller, prediction placed within 3/eta of a
/// threshold adjacent to level z so that both saturated and active
/// branches are exercised.
inline StageTuple random_tuple(int levels, int z, double eta, int dim, fieldmap::Rng& rng) {
  StageTuple t;
  t.eta = eta;
  std::uniform_real_distribution<double> gap(0.3, 1.5), off(-3.0, 3.0);
  double x = 0.0;
  for (int l = 0; l + 1 < levels; ++l) t.tau.push_back(x += gap(rng));
  t.z = z;
  t.k = random_vector(dim, rng);
  t.beta = random_vector(dim, rng);
  const double anchor = z < levels - 1 ? t.tau[static_cast<std::size_t>(z)] : t.tau.back();
  const double target = anchor + off(rng) / eta;
  t.beta += (target - t.beta.dot(t.k)) / t.k.squaredNorm() * t.k;
  return t;
}

/// Undiscounted recursion: H starts at sigma I, every step adds the stage
/// Hessian at the current estimate and takes the full Newton step.
struct RecursionOracle {
  Eigen::VectorXd beta;
  Eigen::MatrixXd h;
  RecursionOracle(int n, double sigma) : beta(Eigen::VectorXd::Zero(n)), h(sigma * Eigen::MatrixXd::Identity(n, n)) {}
  void step(const Eigen::VectorXd& k, int z, const std::vector<double>& tau, double eta) {
    const double a = beta.dot(k);
    h += multilevel_curvature(a, z, tau, eta) * k * k.transpose();
    beta -= h.partialPivLu().solve(multilevel_slope(a, z, tau, eta) * k);
  }
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}); }

}  // namespace oracle
