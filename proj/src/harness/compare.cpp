#include "fieldmap/harness/compare.hpp"

#include "fieldmap/dct.hpp"
#include "fieldmap/rbf.hpp"

namespace fieldmap::harness {

std::vector<CompareRow> compare_models(const FieldGrid& field, const std::vector<int>& mode_counts,
                                       const std::vector<std::pair<int, int>>& rbf_layouts,
                                       const metrics::SsimParams& ssim) {
  std::vector<CompareRow> rows;
  const DctCoefficients coeffs = dct::forward_dct(field);
  for (int n : mode_counts) {
    const FieldGrid approx = dct::truncated_field(coeffs, dct::select_modes_largest(n, field.spec()));
    rows.push_back({"dct", n, 0, 0, metrics::mse(field, approx), metrics::ssim(field, approx, ssim)});
  }
  for (const auto& [jx, jy] : rbf_layouts) {
    const rbf::RbfModel fitted = rbf::fit_rbf(rbf::rbf_grid_layout(jx, jy, field.spec()), field);
    const FieldGrid approx = rbf::rbf_field(fitted, field.spec());
    rows.push_back({"rbf", jx * jy, jx, jy, metrics::mse(field, approx), metrics::ssim(field, approx, ssim)});
  }
  return rows;
}

}  // namespace fieldmap::harness
