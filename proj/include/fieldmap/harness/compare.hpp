#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/metrics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fieldmap::harness {

struct CompareRow {
  std::string model;  // "dct" or "rbf"
  int count = 0;      // retained modes, or RBF basis functions j_x * j_y
  int j_x = 0;
  int j_y = 0;
  double mse = 0.0;
  double ssim = 0.0;
};

/// Best-approximation quality of both field models on the same grid: the
/// optimal DCT truncation to each count of largest modes, and the
/// least-squares RBF fit for each center lattice.
std::vector<CompareRow> compare_models(const FieldGrid& field, const std::vector<int>& mode_counts,
                                       const std::vector<std::pair<int, int>>& rbf_layouts,
                                       const metrics::SsimParams& ssim = {});

}  // namespace fieldmap::harness
