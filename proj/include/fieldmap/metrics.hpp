#pragma once

#include "fieldmap/grid.hpp"

#include <optional>

namespace fieldmap::metrics {

/// Gaussian-window SSIM parameters. Without an explicit dynamic range the
/// range is max - min of the true field.
struct SsimParams {
  int window = 11;
  double window_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  std::optional<double> dynamic_range;

  void validate() const;
};

double mse(const FieldGrid& truth, const FieldGrid& estimate);

/// Mean local SSIM over every window position fully inside the grid.
double ssim(const FieldGrid& truth, const FieldGrid& estimate, const SsimParams& params = {});

/// Dynamic range used by ssim for this truth field.
double resolve_dynamic_range(const FieldGrid& truth, const SsimParams& params);

}  // namespace fieldmap::metrics
