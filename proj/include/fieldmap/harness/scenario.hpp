#pragma once

#include "fieldmap/estimator.hpp"
#include "fieldmap/harness/config.hpp"

#include <cstdint>
#include <vector>

namespace fieldmap::harness {

/// One metrics row. Row 0 is the zero-estimate baseline (z = -1); row k > 0
/// follows the update with measurement k - 1, taken at position/index.
struct RunRow {
  long k = 0;
  Point position;
  PositionIndex index;
  int z = -1;
  double mse = 0.0;
  double ssim = 0.0;
};

/// Estimator state immediately before and after a mode-set switch.
struct ModeSwitchSnapshot {
  long k = 0;
  estimator::EstimatorState before;
  estimator::EstimatorState after;
};

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;  // master seed; substreams derive from (seed, run)
  std::vector<RunRow> rows;  // iterations + 1 rows
  estimator::EstimatorState final_state;
  std::vector<ModeSwitchSnapshot> mode_switches;
  double seconds = 0.0;
};

/// Runs cfg.runs independent seeded runs, optionally on several threads.
/// Results are identical for any job count.
std::vector<RunRecord> run_scenario(const ScenarioConfig& cfg, int jobs = 1);

RunRecord run_single(const ScenarioConfig& cfg, int run);

struct AggregateRow {
  long k = 0;
  double mse_mean = 0.0;
  double mse_std = 0.0;
  double ssim_mean = 0.0;
  double ssim_std = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs);

/// Grows or shrinks state to target, splitting a mixed change into a
/// deletion followed by an expansion.
estimator::EstimatorState switch_modes(const estimator::EstimatorState& state, const dct::ModeSet& target);

}  // namespace fieldmap::harness
