#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/harness/compare.hpp"
#include "fieldmap/harness/config.hpp"
#include "fieldmap/harness/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fieldmap::harness {

/// Dense field CSV: n_y lines (I_y = 0 first), each with n_x values (I_x = 0 first).
void write_field_csv(const std::filesystem::path& path, const FieldGrid& field);
FieldGrid read_field_csv(const std::filesystem::path& path, const GridSpec& spec);

/// Header `k,x,y,Ix,Iy,z,mse,ssim`; z is empty on the baseline row.
void write_run_csv(const std::filesystem::path& path, const RunRecord& record);

/// Header `k,mse_mean,mse_std,ssim_mean,ssim_std` over all runs.
void write_aggregate_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows);

/// Header `model,count,j_x,j_y,mse,ssim`.
void write_compare_csv(const std::filesystem::path& path, const std::vector<CompareRow>& rows);

json state_to_json(const estimator::EstimatorState& state);
estimator::EstimatorState state_from_json(const json& j);

/// Sidecar echoing the resolved config, overrides, seeds and SSIM parameters.
json run_metadata(const ScenarioConfig& cfg, const std::vector<std::string>& overrides,
                  const std::vector<RunRecord>& runs);

void write_json(const std::filesystem::path& path, const json& j);

}  // namespace fieldmap::harness
