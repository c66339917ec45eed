#include "fieldmap/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace fieldmap::dct {

double alpha(int u, int n) { return u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n); }

namespace {

double cos_term(int index, int u, int n) {
  return std::cos((2.0 * index + 1.0) * std::numbers::pi * u / (2.0 * n));
}

// Orthonormal DCT-II matrix: row u, column I holds alpha(u) cos((2I+1) pi u / 2n).
Eigen::MatrixXd dct_matrix(int n) {
  Eigen::MatrixXd a(n, n);
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < n; ++i) a(u, i) = alpha(u, n) * cos_term(i, u, n);
  return a;
}

void check_modes_fit(const ModeSet& modes, const GridSpec& spec) {
  if (modes.n_x() != spec.n_x() || modes.n_y() != spec.n_y())
    throw std::invalid_argument("ModeSet bounds do not match the grid");
}

}  // namespace

ModeSet::ModeSet(std::vector<Mode> modes, int n_x, int n_y)
    : modes_(std::move(modes)), lookup_(static_cast<std::size_t>(n_x) * n_y, -1), n_x_(n_x), n_y_(n_y) {
  if (n_x < 1 || n_y < 1) throw std::invalid_argument("ModeSet: bounds must be positive");
  for (std::size_t j = 0; j < modes_.size(); ++j) {
    const Mode m = modes_[j];
    if (m.u < 0 || m.u >= n_x || m.v < 0 || m.v >= n_y)
      throw std::invalid_argument("ModeSet: mode (" + std::to_string(m.u) + ", " + std::to_string(m.v) +
                                  ") out of bounds");
    int& slot = lookup_[static_cast<std::size_t>(m.u) * n_y + m.v];
    if (slot != -1) throw std::invalid_argument("ModeSet: duplicate mode");
    slot = static_cast<int>(j);
  }
}

std::optional<std::size_t> ModeSet::index_of(Mode m) const {
  if (m.u < 0 || m.u >= n_x_ || m.v < 0 || m.v >= n_y_) return std::nullopt;
  const int j = lookup_[static_cast<std::size_t>(m.u) * n_y_ + m.v];
  if (j < 0) return std::nullopt;
  return static_cast<std::size_t>(j);
}

DctCoefficients forward_dct(const FieldGrid& field) {
  const auto& spec = field.spec();
  Eigen::MatrixXd c = dct_matrix(spec.n_x()) * field.values() * dct_matrix(spec.n_y()).transpose();
  return DctCoefficients(spec, std::move(c));
}

FieldGrid inverse_dct(const DctCoefficients& coeffs) {
  const auto& spec = coeffs.spec();
  Eigen::MatrixXd phi = dct_matrix(spec.n_x()).transpose() * coeffs.values() * dct_matrix(spec.n_y());
  return FieldGrid(spec, std::move(phi));
}

ModeSet select_modes_rect(int n_keep_x, int n_keep_y, const GridSpec& spec) {
  if (n_keep_x < 1 || n_keep_x > spec.n_x() || n_keep_y < 1 || n_keep_y > spec.n_y())
    throw std::invalid_argument("select_modes_rect: counts must lie in [1, n_x] x [1, n_y]");
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(n_keep_x) * n_keep_y);
  for (int u = 0; u < n_keep_x; ++u)
    for (int v = 0; v < n_keep_y; ++v) modes.push_back({u, v});
  return ModeSet(std::move(modes), spec.n_x(), spec.n_y());
}

ModeSet select_modes_largest(int n_keep, const GridSpec& spec) {
  if (n_keep < 1 || static_cast<std::size_t>(n_keep) > spec.size())
    throw std::invalid_argument("select_modes_largest: n_keep must lie in [1, n_x * n_y]");
  std::vector<Mode> all;
  all.reserve(spec.size());
  for (int u = 0; u < spec.n_x(); ++u)
    for (int v = 0; v < spec.n_y(); ++v) all.push_back({u, v});
  auto key = [](Mode m) { return std::tuple((m.u + 1) * (m.u + 1) + (m.v + 1) * (m.v + 1), m.u, m.v); };
  std::partial_sort(all.begin(), all.begin() + n_keep, all.end(),
                    [&](Mode a, Mode b) { return key(a) < key(b); });
  all.resize(static_cast<std::size_t>(n_keep));
  return ModeSet(std::move(all), spec.n_x(), spec.n_y());
}

FieldGrid truncated_field(const DctCoefficients& coeffs, const ModeSet& modes) {
  check_modes_fit(modes, coeffs.spec());
  Eigen::MatrixXd kept = Eigen::MatrixXd::Zero(coeffs.values().rows(), coeffs.values().cols());
  for (const Mode& m : modes.modes()) kept(m.u, m.v) = coeffs(m.u, m.v);
  return inverse_dct(DctCoefficients(coeffs.spec(), std::move(kept)));
}

double truncation_mse(const DctCoefficients& coeffs, const ModeSet& modes) {
  check_modes_fit(modes, coeffs.spec());
  double dropped = 0.0;
  const auto& c = coeffs.values();
  for (int u = 0; u < c.rows(); ++u)
    for (int v = 0; v < c.cols(); ++v)
      if (!modes.contains({u, v})) dropped += c(u, v) * c(u, v);
  return dropped / static_cast<double>(coeffs.spec().size());
}

Eigen::VectorXd restrict_coeffs(const DctCoefficients& coeffs, const ModeSet& modes) {
  check_modes_fit(modes, coeffs.spec());
  Eigen::VectorXd c(static_cast<Eigen::Index>(modes.size()));
  for (std::size_t j = 0; j < modes.size(); ++j) c(static_cast<Eigen::Index>(j)) = coeffs(modes[j].u, modes[j].v);
  return c;
}

Eigen::VectorXd scale_coeffs(const Eigen::VectorXd& c, const ModeSet& modes) {
  if (static_cast<std::size_t>(c.size()) != modes.size())
    throw std::invalid_argument("scale_coeffs: length does not match mode count");
  Eigen::VectorXd beta(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) beta(j) = mode_score(modes[static_cast<std::size_t>(j)]) * c(j);
  return beta;
}

Eigen::VectorXd unscale_coeffs(const Eigen::VectorXd& beta, const ModeSet& modes) {
  if (static_cast<std::size_t>(beta.size()) != modes.size())
    throw std::invalid_argument("unscale_coeffs: length does not match mode count");
  Eigen::VectorXd c(beta.size());
  for (Eigen::Index j = 0; j < beta.size(); ++j) c(j) = beta(j) / mode_score(modes[static_cast<std::size_t>(j)]);
  return c;
}

Eigen::VectorXd basis_vector(PositionIndex idx, const ModeSet& modes, const GridSpec& spec) {
  spec.check(idx);
  check_modes_fit(modes, spec);
  Eigen::VectorXd k(static_cast<Eigen::Index>(modes.size()));
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const Mode m = modes[j];
    k(static_cast<Eigen::Index>(j)) = alpha(m.u, spec.n_x()) * alpha(m.v, spec.n_y()) / mode_score(m) *
                                      cos_term(idx.ix, m.u, spec.n_x()) * cos_term(idx.iy, m.v, spec.n_y());
  }
  return k;
}

ModeBasis::ModeBasis(ModeSet modes, GridSpec spec)
    : modes_(std::move(modes)),
      spec_(spec),
      x_table_(spec.n_x(), static_cast<Eigen::Index>(modes_.size())),
      y_table_(spec.n_y(), static_cast<Eigen::Index>(modes_.size())) {
  check_modes_fit(modes_, spec_);
  for (std::size_t j = 0; j < modes_.size(); ++j) {
    const Mode m = modes_[j];
    const auto col = static_cast<Eigen::Index>(j);
    const double ax = alpha(m.u, spec_.n_x()) / mode_score(m);
    const double ay = alpha(m.v, spec_.n_y());
    for (int i = 0; i < spec_.n_x(); ++i) x_table_(i, col) = ax * cos_term(i, m.u, spec_.n_x());
    for (int i = 0; i < spec_.n_y(); ++i) y_table_(i, col) = ay * cos_term(i, m.v, spec_.n_y());
  }
}

Eigen::VectorXd ModeBasis::vector(PositionIndex idx) const {
  spec_.check(idx);
  return x_table_.row(idx.ix).transpose().cwiseProduct(y_table_.row(idx.iy).transpose());
}

FieldGrid ModeBasis::field(const Eigen::VectorXd& beta) const {
  if (static_cast<std::size_t>(beta.size()) != modes_.size())
    throw std::invalid_argument("ModeBasis::field: coefficient length does not match mode count");
  Eigen::MatrixXd phi = x_table_ * beta.asDiagonal() * y_table_.transpose();
  return FieldGrid(spec_, std::move(phi));
}

}  // namespace fieldmap::dct
