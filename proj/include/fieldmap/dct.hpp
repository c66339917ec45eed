#pragma once

#include "fieldmap/grid.hpp"

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace fieldmap::dct {

/// One DCT mode (u, v).
struct Mode {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// (u+1)^2 + (v+1)^2, the ranking score and coefficient scaling factor.
inline double mode_score(Mode m) {
  return static_cast<double>((m.u + 1) * (m.u + 1) + (m.v + 1) * (m.v + 1));
}

/// DCT normalization alpha(u) for a dimension with n points.
double alpha(int u, int n);

/// Ordered set of retained modes. The order fixes the meaning of index j in
/// every per-mode vector (scaled coefficients, basis vectors, Hessians).
class ModeSet {
 public:
  ModeSet() : ModeSet({}, 1, 1) {}
  ModeSet(std::vector<Mode> modes, int n_x, int n_y);

  std::size_t size() const { return modes_.size(); }
  const Mode& operator[](std::size_t j) const { return modes_[j]; }
  const std::vector<Mode>& modes() const { return modes_; }
  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }

  std::optional<std::size_t> index_of(Mode m) const;
  bool contains(Mode m) const { return index_of(m).has_value(); }

  friend bool operator==(const ModeSet& a, const ModeSet& b) {
    return a.n_x_ == b.n_x_ && a.n_y_ == b.n_y_ && a.modes_ == b.modes_;
  }

 private:
  std::vector<Mode> modes_;
  std::vector<int> lookup_;  // u * n_y + v -> j, or -1
  int n_x_, n_y_;
};

DctCoefficients forward_dct(const FieldGrid& field);
FieldGrid inverse_dct(const DctCoefficients& coeffs);

/// First n_keep_x by n_keep_y modes, lexicographic in (u, v).
ModeSet select_modes_rect(int n_keep_x, int n_keep_y, const GridSpec& spec);

/// The n_keep modes with the smallest (u+1)^2 + (v+1)^2, ties lexicographic.
/// Successive counts produce nested prefixes of the same ordering.
ModeSet select_modes_largest(int n_keep, const GridSpec& spec);

/// Reconstruction from the retained modes only; other coefficients read as zero.
FieldGrid truncated_field(const DctCoefficients& coeffs, const ModeSet& modes);

/// Mean squared error of the optimal truncation: sum of squared dropped
/// coefficients over n_x * n_y.
double truncation_mse(const DctCoefficients& coeffs, const ModeSet& modes);

/// Retained coefficients C_j in ModeSet order.
Eigen::VectorXd restrict_coeffs(const DctCoefficients& coeffs, const ModeSet& modes);

Eigen::VectorXd scale_coeffs(const Eigen::VectorXd& c, const ModeSet& modes);
Eigen::VectorXd unscale_coeffs(const Eigen::VectorXd& beta, const ModeSet& modes);

/// K(idx): component j is alpha_x(u_j) alpha_y(v_j) / score_j times the two
/// cosines at idx, so that beta^T K reproduces the truncated field.
Eigen::VectorXd basis_vector(PositionIndex idx, const ModeSet& modes, const GridSpec& spec);

/// Precomputed separable cosine tables for one ModeSet on one grid. Used on
/// the hot path where basis vectors and reconstructions are needed every step.
class ModeBasis {
 public:
  ModeBasis(ModeSet modes, GridSpec spec);

  const ModeSet& modes() const { return modes_; }
  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return modes_.size(); }

  Eigen::VectorXd vector(PositionIndex idx) const;

  /// Field sum_j beta_j K_j(I) over the whole grid.
  FieldGrid field(const Eigen::VectorXd& beta) const;

 private:
  ModeSet modes_;
  GridSpec spec_;
  Eigen::MatrixXd x_table_;  // n_x by N: alpha_x(u_j) cos(.) / score_j
  Eigen::MatrixXd y_table_;  // n_y by N: alpha_y(v_j) cos(.)
};

}  // namespace fieldmap::dct
