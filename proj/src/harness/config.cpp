#include "fieldmap/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fieldmap::harness {

const std::vector<SchemaEntry>& config_schema() {
  static const std::vector<SchemaEntry> schema = {
      {"name", "free-form scenario label copied into the metadata"},
      {"grid.x_min", "search region lower x bound"},
      {"grid.x_max", "search region upper x bound"},
      {"grid.y_min", "search region lower y bound"},
      {"grid.y_max", "search region upper y bound"},
      {"grid.n_x", "cells along x"},
      {"grid.n_y", "cells along y"},
      {"field.path", "dense field CSV (n_y rows of n_x values); replaces the generated field"},
      {"field.seed", "seed of the generated field"},
      {"field.bumps", "number of Gaussian bumps in the generated field"},
      {"field.amplitude_min", "smallest bump amplitude"},
      {"field.amplitude_max", "largest bump amplitude"},
      {"field.width_min", "smallest bump width (length units)"},
      {"field.width_max", "largest bump width (length units)"},
      {"modes.rule", "\"largest\" (smallest (u+1)^2+(v+1)^2) or \"rect\""},
      {"modes.count", "number of retained modes for rule largest"},
      {"modes.n_keep_x", "retained u range for rule rect"},
      {"modes.n_keep_y", "retained v range for rule rect"},
      {"quantizer.thresholds", "non-decreasing quantizer thresholds, L-1 of them"},
      {"noise.kind", "\"gaussian\" or \"none\""},
      {"noise.variance", "measurement noise variance"},
      {"estimator.eta", "logistic sharpness"},
      {"estimator.sigma_lm", "Levenberg-Marquardt damping added every step"},
      {"estimator.delta", "forgetting factor in (0, 1]"},
      {"planner.rho0", "distance travelled between measurements"},
      {"planner.epsilon", "probability of a random exploration target"},
      {"planner.lattice", "[n_cx, n_cy] lattice of candidate targets"},
      {"planner.candidates", "explicit [[ix, iy], ...] candidate list; overrides the lattice"},
      {"planner.start", "[ix, iy] initial position index"},
      {"planner.eigen_method", "\"rank_one\" (secular equation) or \"direct\" (eigendecomposition per candidate)"},
      {"iterations", "measurements per run"},
      {"runs", "independent Monte-Carlo runs"},
      {"seed", "master seed; noise, exploration and field streams derive from it"},
      {"switches", "[{\"k\": int, \"field\": {...}, \"modes\": {...}}, ...] applied before measurement k"},
      {"ssim.window", "odd Gaussian window side"},
      {"ssim.window_sigma", "Gaussian window standard deviation"},
      {"ssim.k1", "luminance stabiliser"},
      {"ssim.k2", "contrast stabiliser"},
      {"ssim.dynamic_range", "positive number, or \"auto\" for max - min of the true field"},
      {"compare.mode_counts", "retained mode counts for the model comparison"},
      {"compare.rbf_layouts", "[[j_x, j_y], ...] RBF center lattices for the model comparison"},
      {"output.write_fields", "also write true and final estimated fields as CSV"},
  };
  return schema;
}

namespace {

bool is_schema_key(std::string_view key) {
  const auto& s = config_schema();
  return std::any_of(s.begin(), s.end(), [&](const SchemaEntry& e) { return e.key == key; });
}

bool is_schema_prefix(std::string_view prefix) {
  const auto& s = config_schema();
  return std::any_of(s.begin(), s.end(), [&](const SchemaEntry& e) {
    return e.key.size() > prefix.size() && e.key.substr(0, prefix.size()) == prefix && e.key[prefix.size()] == '.';
  });
}

void check_known_keys(const json& node, const std::string& prefix) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (is_schema_key(key)) continue;
    if (it->is_object() && is_schema_prefix(key)) {
      check_known_keys(*it, key);
      continue;
    }
    throw ConfigError("unknown config key '" + key + "'");
  }
}

template <typename T>
T get_as(const json& node, const char* key, const std::string& where) {
  try {
    return node.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + where + key + "': " + e.what());
  }
}

template <typename T>
void read(const json& node, const char* key, T& out, const std::string& where) {
  if (node.contains(key)) out = get_as<T>(node, key, where);
}

PositionIndex read_index(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw ConfigError("config key '" + where + "': expected [ix, iy]");
  return {v[0].get<int>(), v[1].get<int>()};
}

std::pair<int, int> read_pair(const json& v, const std::string& where) {
  const PositionIndex p = read_index(v, where);
  return {p.ix, p.iy};
}

void read_field(const json& node, FieldSource& out, const std::string& where) {
  if (!node.is_object()) throw ConfigError("config key '" + where + "': expected an object");
  if (node.contains("path")) out.path = get_as<std::string>(node, "path", where + ".");
  auto& r = out.recipe;
  const std::string w = where + ".";
  read(node, "seed", r.seed, w);
  read(node, "bumps", r.bumps, w);
  read(node, "amplitude_min", r.amplitude_min, w);
  read(node, "amplitude_max", r.amplitude_max, w);
  read(node, "width_min", r.width_min, w);
  read(node, "width_max", r.width_max, w);
}

void read_modes(const json& node, ModeSelection& out, const std::string& where) {
  if (!node.is_object()) throw ConfigError("config key '" + where + "': expected an object");
  const std::string w = where + ".";
  if (node.contains("rule")) {
    const auto rule = get_as<std::string>(node, "rule", w);
    if (rule == "largest")
      out.rule = ModeRule::largest;
    else if (rule == "rect")
      out.rule = ModeRule::rect;
    else
      throw ConfigError("config key '" + w + "rule': expected \"largest\" or \"rect\", got \"" + rule + "\"");
  }
  read(node, "count", out.count, w);
  read(node, "n_keep_x", out.n_keep_x, w);
  read(node, "n_keep_y", out.n_keep_y, w);
}

json field_to_json(const FieldSource& f) {
  json j = {{"seed", f.recipe.seed},
            {"bumps", f.recipe.bumps},
            {"amplitude_min", f.recipe.amplitude_min},
            {"amplitude_max", f.recipe.amplitude_max},
            {"width_min", f.recipe.width_min},
            {"width_max", f.recipe.width_max}};
  if (f.path) j["path"] = *f.path;
  return j;
}

json modes_to_json(const ModeSelection& m) {
  return {{"rule", m.rule == ModeRule::largest ? "largest" : "rect"},
          {"count", m.count},
          {"n_keep_x", m.n_keep_x},
          {"n_keep_y", m.n_keep_y}};
}

void validate_recipe(const FieldRecipe& r, const std::string& where) {
  if (r.bumps < 0) throw ConfigError(where + ".bumps must be >= 0");
  if (!(r.amplitude_min <= r.amplitude_max)) throw ConfigError(where + ": amplitude_min exceeds amplitude_max");
  if (!(r.width_min > 0.0) || !(r.width_min <= r.width_max))
    throw ConfigError(where + ": widths must satisfy 0 < width_min <= width_max");
}

void validate_modes(const ModeSelection& m, const GridSpec& g, const std::string& where) {
  try {
    (void)m.select(g);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

dct::ModeSet ModeSelection::select(const GridSpec& grid) const {
  return rule == ModeRule::largest ? dct::select_modes_largest(count, grid)
                                   : dct::select_modes_rect(n_keep_x, n_keep_y, grid);
}

planner::PlannerConfig PlannerSettings::resolve(const GridSpec& grid) const {
  planner::PlannerConfig cfg;
  cfg.rho0 = rho0;
  cfg.epsilon = epsilon;
  cfg.eigen_method = eigen_method;
  cfg.candidates = candidates.empty() ? planner::lattice_candidates(lattice.first, lattice.second, grid) : candidates;
  return cfg;
}

void ScenarioConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (!field.path) validate_recipe(field.recipe, "field");
  validate_modes(modes, grid, "modes");
  try {
    sensing::Quantizer q(thresholds);
    sensing::NoiseModel n(noise.kind, noise.variance);
    estimator.validate();
    ssim.validate();
    if (planner.lattice.first < 1 || planner.lattice.second < 1)
      throw std::invalid_argument("planner.lattice counts must be >= 1");
    planner.resolve(grid).validate(grid);
    grid.check(planner.start);
  } catch (const std::logic_error& e) {
    throw ConfigError(e.what());
  }
  if (grid.n_x() < ssim.window || grid.n_y() < ssim.window)
    throw ConfigError("grid is smaller than the SSIM window");
  long prev = -1;
  for (std::size_t i = 0; i < switches.size(); ++i) {
    const auto& s = switches[i];
    const std::string where = "switches[" + std::to_string(i) + "]";
    if (s.k <= prev) throw ConfigError(where + ".k: switch iterations must be strictly increasing");
    if (s.k < 0 || s.k >= iterations) throw ConfigError(where + ".k must lie in [0, iterations)");
    prev = s.k;
    if (s.field && !s.field->path) validate_recipe(s.field->recipe, where + ".field");
    if (s.modes) validate_modes(*s.modes, grid, where + ".modes");
  }
  for (int c : compare.mode_counts)
    if (c < 1 || static_cast<std::size_t>(c) > grid.size()) throw ConfigError("compare.mode_counts out of range");
  for (const auto& [jx, jy] : compare.rbf_layouts)
    if (jx < 1 || jy < 1) throw ConfigError("compare.rbf_layouts entries must be >= 1");
}

ScenarioConfig default_config() { return ScenarioConfig{}; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigReadError("cannot open config file '" + path + "'");
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigReadError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

void apply_override(json& tree, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw OverrideError("override '" + std::string(assignment) + "' is not of the form key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  if (!is_schema_key(key)) throw OverrideError("override key '" + key + "' is not a config key");
  if (text.empty()) throw OverrideError("override '" + key + "' has an empty value");

  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &tree;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      break;
    }
    json& child = (*node)[part];
    if (!child.is_object()) child = json::object();
    node = &child;
    start = dot + 1;
  }
  // Choosing a generated field through an override drops a file source.
  if (key.rfind("field.", 0) == 0 && key != "field.path" && tree["field"].contains("path")) tree["field"].erase("path");
}

ScenarioConfig parse_config(const json& tree) {
  if (!tree.is_object()) throw ConfigError("config root must be a JSON object");
  check_known_keys(tree, "");
  ScenarioConfig cfg = default_config();
  read(tree, "name", cfg.name, "");

  if (tree.contains("grid")) {
    const json& g = tree["grid"];
    double x_min = cfg.grid.x_min(), x_max = cfg.grid.x_max(), y_min = cfg.grid.y_min(), y_max = cfg.grid.y_max();
    int n_x = cfg.grid.n_x(), n_y = cfg.grid.n_y();
    read(g, "x_min", x_min, "grid.");
    read(g, "x_max", x_max, "grid.");
    read(g, "y_min", y_min, "grid.");
    read(g, "y_max", y_max, "grid.");
    read(g, "n_x", n_x, "grid.");
    read(g, "n_y", n_y, "grid.");
    try {
      cfg.grid = GridSpec(x_min, x_max, y_min, y_max, n_x, n_y);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (tree.contains("field")) read_field(tree["field"], cfg.field, "field");
  if (tree.contains("modes")) read_modes(tree["modes"], cfg.modes, "modes");
  if (tree.contains("quantizer")) read(tree["quantizer"], "thresholds", cfg.thresholds, "quantizer.");
  if (tree.contains("noise")) {
    const json& n = tree["noise"];
    if (n.contains("kind")) {
      const auto kind = get_as<std::string>(n, "kind", "noise.");
      if (kind == "gaussian")
        cfg.noise.kind = sensing::NoiseKind::gaussian;
      else if (kind == "none")
        cfg.noise.kind = sensing::NoiseKind::none;
      else
        throw ConfigError("noise.kind: expected \"gaussian\" or \"none\", got \"" + kind + "\"");
    }
    read(n, "variance", cfg.noise.variance, "noise.");
  }
  if (tree.contains("estimator")) {
    const json& e = tree["estimator"];
    read(e, "eta", cfg.estimator.eta, "estimator.");
    read(e, "sigma_lm", cfg.estimator.sigma_lm, "estimator.");
    read(e, "delta", cfg.estimator.delta, "estimator.");
  }
  if (tree.contains("planner")) {
    const json& p = tree["planner"];
    auto& ps = cfg.planner;
    read(p, "rho0", ps.rho0, "planner.");
    read(p, "epsilon", ps.epsilon, "planner.");
    if (p.contains("lattice")) ps.lattice = read_pair(p["lattice"], "planner.lattice");
    if (p.contains("start")) ps.start = read_index(p["start"], "planner.start");
    if (p.contains("candidates")) {
      if (!p["candidates"].is_array()) throw ConfigError("planner.candidates: expected an array");
      ps.candidates.clear();
      for (const auto& c : p["candidates"]) ps.candidates.push_back(read_index(c, "planner.candidates"));
    }
    if (p.contains("eigen_method")) {
      const auto m = get_as<std::string>(p, "eigen_method", "planner.");
      if (m == "rank_one")
        ps.eigen_method = planner::EigenMethod::rank_one;
      else if (m == "direct")
        ps.eigen_method = planner::EigenMethod::direct;
      else
        throw ConfigError("planner.eigen_method: expected \"rank_one\" or \"direct\"");
    }
  }
  read(tree, "iterations", cfg.iterations, "");
  read(tree, "runs", cfg.runs, "");
  read(tree, "seed", cfg.seed, "");
  if (tree.contains("switches")) {
    const json& sw = tree["switches"];
    if (!sw.is_array()) throw ConfigError("switches: expected an array");
    for (std::size_t i = 0; i < sw.size(); ++i) {
      const json& s = sw[i];
      const std::string where = "switches[" + std::to_string(i) + "]";
      if (!s.is_object() || !s.contains("k")) throw ConfigError(where + ": expected an object with key k");
      for (auto it = s.begin(); it != s.end(); ++it)
        if (it.key() != "k" && it.key() != "field" && it.key() != "modes")
          throw ConfigError("unknown config key '" + where + "." + it.key() + "'");
      SwitchEvent ev;
      ev.k = get_as<long>(s, "k", where + ".");
      if (s.contains("field")) {
        if (s["field"].is_object()) check_known_keys(s["field"], "field");
        // A switched field starts from the base recipe so only differences need listing.
        FieldSource f{cfg.field.recipe, std::nullopt};
        read_field(s["field"], f, where + ".field");
        ev.field = f;
      }
      if (s.contains("modes")) {
        if (s["modes"].is_object()) check_known_keys(s["modes"], "modes");
        ModeSelection m = cfg.modes;
        read_modes(s["modes"], m, where + ".modes");
        ev.modes = m;
      }
      cfg.switches.push_back(std::move(ev));
    }
  }
  if (tree.contains("ssim")) {
    const json& s = tree["ssim"];
    read(s, "window", cfg.ssim.window, "ssim.");
    read(s, "window_sigma", cfg.ssim.window_sigma, "ssim.");
    read(s, "k1", cfg.ssim.k1, "ssim.");
    read(s, "k2", cfg.ssim.k2, "ssim.");
    if (s.contains("dynamic_range")) {
      const json& d = s["dynamic_range"];
      if (d.is_string() && d.get<std::string>() == "auto")
        cfg.ssim.dynamic_range.reset();
      else if (d.is_number())
        cfg.ssim.dynamic_range = d.get<double>();
      else
        throw ConfigError("ssim.dynamic_range: expected a number or \"auto\"");
    }
  }
  if (tree.contains("compare")) {
    const json& c = tree["compare"];
    read(c, "mode_counts", cfg.compare.mode_counts, "compare.");
    if (c.contains("rbf_layouts")) {
      if (!c["rbf_layouts"].is_array()) throw ConfigError("compare.rbf_layouts: expected an array");
      cfg.compare.rbf_layouts.clear();
      for (const auto& l : c["rbf_layouts"]) cfg.compare.rbf_layouts.push_back(read_pair(l, "compare.rbf_layouts"));
    }
  }
  if (tree.contains("output")) read(tree["output"], "write_fields", cfg.write_fields, "output.");

  cfg.validate();
  return cfg;
}

json to_json(const metrics::SsimParams& p) {
  json j = {{"window", p.window}, {"window_sigma", p.window_sigma}, {"k1", p.k1}, {"k2", p.k2}};
  if (p.dynamic_range)
    j["dynamic_range"] = *p.dynamic_range;
  else
    j["dynamic_range"] = "auto";
  return j;
}

json to_json(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["grid"] = {{"x_min", cfg.grid.x_min()}, {"x_max", cfg.grid.x_max()}, {"y_min", cfg.grid.y_min()},
               {"y_max", cfg.grid.y_max()}, {"n_x", cfg.grid.n_x()},     {"n_y", cfg.grid.n_y()}};
  j["field"] = field_to_json(cfg.field);
  j["modes"] = modes_to_json(cfg.modes);
  j["quantizer"] = {{"thresholds", cfg.thresholds}};
  j["noise"] = {{"kind", cfg.noise.kind == sensing::NoiseKind::gaussian ? "gaussian" : "none"},
                {"variance", cfg.noise.variance}};
  j["estimator"] = {{"eta", cfg.estimator.eta}, {"sigma_lm", cfg.estimator.sigma_lm}, {"delta", cfg.estimator.delta}};
  json candidates = json::array();
  for (const auto& c : cfg.planner.candidates) candidates.push_back({c.ix, c.iy});
  j["planner"] = {{"rho0", cfg.planner.rho0},
                  {"epsilon", cfg.planner.epsilon},
                  {"lattice", {cfg.planner.lattice.first, cfg.planner.lattice.second}},
                  {"candidates", candidates},
                  {"start", {cfg.planner.start.ix, cfg.planner.start.iy}},
                  {"eigen_method", cfg.planner.eigen_method == planner::EigenMethod::direct ? "direct" : "rank_one"}};
  j["iterations"] = cfg.iterations;
  j["runs"] = cfg.runs;
  j["seed"] = cfg.seed;
  json switches = json::array();
  for (const auto& s : cfg.switches) {
    json e = {{"k", s.k}};
    if (s.field) e["field"] = field_to_json(*s.field);
    if (s.modes) e["modes"] = modes_to_json(*s.modes);
    switches.push_back(e);
  }
  j["switches"] = switches;
  j["ssim"] = to_json(cfg.ssim);
  json layouts = json::array();
  for (const auto& [jx, jy] : cfg.compare.rbf_layouts) layouts.push_back({jx, jy});
  j["compare"] = {{"mode_counts", cfg.compare.mode_counts}, {"rbf_layouts", layouts}};
  j["output"] = {{"write_fields", cfg.write_fields}};
  return j;
}

}  // namespace fieldmap::harness
