#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/rng.hpp"

#include <vector>

namespace fieldmap::sensing {

/// L-level quantizer with thresholds tau_0 <= ... <= tau_{L-2}. Level l covers
/// [tau_{l-1}, tau_l); the bottom level is x < tau_0 and the top is x >= tau_{L-2}.
class Quantizer {
 public:
  explicit Quantizer(std::vector<double> thresholds);

  int levels() const { return static_cast<int>(thresholds_.size()) + 1; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  double threshold(int l) const { return thresholds_[static_cast<std::size_t>(l)]; }

  int operator()(double x) const;

 private:
  std::vector<double> thresholds_;
};

int quantize(double x, const Quantizer& q);

enum class NoiseKind { none, gaussian };

/// Zero-mean additive measurement noise.
struct NoiseModel {
  NoiseKind kind = NoiseKind::gaussian;
  double variance = 0.1;

  NoiseModel() = default;
  NoiseModel(NoiseKind kind, double variance);

  double sample(Rng& rng) const;
};

/// Quantized reading q(phi_d(idx) + n) with n drawn from noise.
int measure(const FieldGrid& field, PositionIndex idx, const NoiseModel& noise, const Quantizer& q, Rng& rng);

/// Same channel with an arbitrary zero-mean sampler supplying n.
template <typename Sampler>
int measure_with(const FieldGrid& field, PositionIndex idx, Sampler&& sampler, const Quantizer& q) {
  const double value = field.at(idx);
  return q(value + sampler());
}

}  // namespace fieldmap::sensing
