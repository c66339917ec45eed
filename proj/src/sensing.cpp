#include "fieldmap/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fieldmap::sensing {

Quantizer::Quantizer(std::vector<double> thresholds) : thresholds_(std::move(thresholds)) {
  if (thresholds_.empty()) throw std::invalid_argument("Quantizer: at least one threshold required (L >= 2)");
  for (double t : thresholds_)
    if (!std::isfinite(t)) throw std::invalid_argument("Quantizer: thresholds must be finite");
  if (!std::is_sorted(thresholds_.begin(), thresholds_.end()))
    throw std::invalid_argument("Quantizer: thresholds must be non-decreasing");
}

int Quantizer::operator()(double x) const {
  // Number of thresholds <= x.
  return static_cast<int>(std::upper_bound(thresholds_.begin(), thresholds_.end(), x) - thresholds_.begin());
}

int quantize(double x, const Quantizer& q) { return q(x); }

NoiseModel::NoiseModel(NoiseKind kind, double variance) : kind(kind), variance(variance) {
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw std::invalid_argument("NoiseModel: variance must be finite and non-negative");
}

double NoiseModel::sample(Rng& rng) const {
  if (kind == NoiseKind::none || variance == 0.0) return 0.0;
  std::normal_distribution<double> dist(0.0, std::sqrt(variance));
  return dist(rng);
}

int measure(const FieldGrid& field, PositionIndex idx, const NoiseModel& noise, const Quantizer& q, Rng& rng) {
  return measure_with(field, idx, [&] { return noise.sample(rng); }, q);
}

}  // namespace fieldmap::sensing
