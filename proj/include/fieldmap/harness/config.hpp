#pragma once

#include "fieldmap/estimator.hpp"
#include "fieldmap/grid.hpp"
#include "fieldmap/metrics.hpp"
#include "fieldmap/planner.hpp"
#include "fieldmap/sensing.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fieldmap::harness {

using json = nlohmann::json;

/// Syntax errors in overrides and unknown keys.
class OverrideError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A config that parsed but violates a constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A config file that could not be read or is not valid JSON.
class ConfigReadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum of Gaussian bumps exp(-|x - c|^2 / (2 w^2)) scaled by an amplitude.
struct FieldRecipe {
  std::uint64_t seed = 355;
  int bumps = 10;
  double amplitude_min = 1.0;
  double amplitude_max = 3.5;
  double width_min = 5.0;
  double width_max = 12.0;
};

/// Either a generated recipe or a dense CSV file.
struct FieldSource {
  FieldRecipe recipe;
  std::optional<std::string> path;
};

enum class ModeRule { largest, rect };

struct ModeSelection {
  ModeRule rule = ModeRule::largest;
  int count = 60;     // largest
  int n_keep_x = 8;   // rect
  int n_keep_y = 8;   // rect

  dct::ModeSet select(const GridSpec& grid) const;
};

struct PlannerSettings {
  double rho0 = 10.0;
  double epsilon = 0.1;
  std::pair<int, int> lattice{6, 6};
  std::vector<PositionIndex> candidates;  // explicit list wins over the lattice
  PositionIndex start{50, 50};
  planner::EigenMethod eigen_method = planner::EigenMethod::rank_one;

  planner::PlannerConfig resolve(const GridSpec& grid) const;
};

/// At iteration k, before the k-th measurement, swap the true field and/or
/// the estimated mode set.
struct SwitchEvent {
  long k = 0;
  std::optional<FieldSource> field;
  std::optional<ModeSelection> modes;
};

struct CompareSettings {
  std::vector<int> mode_counts{10, 50, 100, 500, 1000};
  std::vector<std::pair<int, int>> rbf_layouts{{3, 3}, {5, 5}, {7, 7}, {10, 10}, {20, 20}};
};

struct ScenarioConfig {
  std::string name = "scenario";
  GridSpec grid{0.0, 100.0, 0.0, 100.0, 100, 100};
  FieldSource field;
  ModeSelection modes;
  std::vector<double> thresholds{1.0, 2.0, 3.0};
  sensing::NoiseModel noise{sensing::NoiseKind::gaussian, 0.1};
  estimator::EstimatorConfig estimator;
  PlannerSettings planner;
  long iterations = 2000;
  int runs = 10;
  std::uint64_t seed = 1;
  std::vector<SwitchEvent> switches;
  metrics::SsimParams ssim;
  CompareSettings compare;
  bool write_fields = true;

  /// Throws ConfigError.
  void validate() const;
};

/// One documented config key.
struct SchemaEntry {
  std::string_view key;
  std::string_view description;
};

/// Every recognised dotted key with its description, in documentation order.
const std::vector<SchemaEntry>& config_schema();

ScenarioConfig default_config();

/// Throws ConfigReadError.
json load_json_file(const std::string& path);

/// Apply "dotted.key=value"; value is parsed as JSON when possible, else
/// taken as a string. Throws OverrideError on bad syntax or unknown keys.
void apply_override(json& tree, std::string_view assignment);

/// Builds a config from defaults plus the keys present in tree. Unknown keys,
/// bad values and failed constraints throw ConfigError.
ScenarioConfig parse_config(const json& tree);

json to_json(const ScenarioConfig& cfg);
json to_json(const metrics::SsimParams& p);

}  // namespace fieldmap::harness
