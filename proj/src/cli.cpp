#include "fieldmap/cli.hpp"

#include "fieldmap/harness/compare.hpp"
#include "fieldmap/harness/config.hpp"
#include "fieldmap/harness/field_gen.hpp"
#include "fieldmap/harness/io.hpp"
#include "fieldmap/harness/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

namespace fieldmap::cli {

namespace fs = std::filesystem;
using harness::json;

namespace {

// Config keys that also get a dedicated long flag, with the value the
// shipped static-field config uses.
struct ParamFlag {
  const char* key;
  const char* help;
};

constexpr ParamFlag kParamFlags[] = {
    {"estimator.eta", "logistic sharpness eta (static config: 5)"},
    {"estimator.sigma_lm", "Levenberg-Marquardt damping (static config: 5e-05 = 1/20000)"},
    {"estimator.delta", "forgetting factor in (0,1] (static config: 1; time-varying config: 0.995)"},
    {"planner.rho0", "distance between measurements (static config: 10)"},
    {"planner.epsilon", "random exploration probability (static config: 0.1)"},
    {"planner.lattice", "candidate target lattice as JSON [n_cx,n_cy] (static config: [6,6], 36 candidates)"},
    {"planner.start", "initial position index as JSON [ix,iy] (static config: [50,50])"},
    {"quantizer.thresholds", "quantizer thresholds as JSON list (static config: [1,2,3], 4 levels)"},
    {"noise.variance", "Gaussian noise variance (static config: 0.1)"},
    {"modes.count", "number of largest modes estimated (static config: 60)"},
    {"iterations", "measurements per run (static config: 2000)"},
    {"runs", "Monte-Carlo runs averaged (static config: 10)"},
    {"seed", "master seed"},
};

struct Invocation {
  std::string config;
  std::string out_dir;
  std::vector<std::string> sets;
  std::map<std::string, std::string> params;
  int jobs = 1;
};

void add_common(CLI::App& sub, Invocation& inv, bool needs_out) {
  sub.add_option("--config", inv.config, "scenario config file (JSON)")->required();
  auto* out = sub.add_option("--out", inv.out_dir, "output directory; every file is written inside it");
  if (needs_out) out->required();
  sub.add_option("--set", inv.sets, "override any config key, KEY=VALUE (repeatable, applied after the file)");
  for (const auto& p : kParamFlags) {
    sub.add_option_function<std::string>(
        std::string("--") + p.key, [&inv, key = std::string(p.key)](const std::string& v) { inv.params[key] = v; },
        p.help);
  }
}

struct Resolved {
  harness::ScenarioConfig cfg;
  std::vector<std::string> overrides;
};

Resolved resolve(const Invocation& inv) {
  json tree = harness::load_json_file(inv.config);
  Resolved r;
  r.overrides = inv.sets;
  for (const auto& p : kParamFlags) {
    auto it = inv.params.find(p.key);
    if (it != inv.params.end()) r.overrides.push_back(it->first + "=" + it->second);
  }
  for (const auto& o : r.overrides) harness::apply_override(tree, o);
  r.cfg = harness::parse_config(tree);
  return r;
}

std::string numbered(const char* stem, int i, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d%s", stem, i, ext);
  return buf;
}

int cmd_estimate(const Invocation& inv, std::ostream& out) {
  const Resolved r = resolve(inv);
  const fs::path dir(inv.out_dir);
  fs::create_directories(dir);
  const auto runs = harness::run_scenario(r.cfg, inv.jobs);
  for (const auto& rec : runs) {
    harness::write_run_csv(dir / numbered("run", rec.run, ".csv"), rec);
    harness::write_json(dir / numbered("state", rec.run, ".json"), harness::state_to_json(rec.final_state));
    if (r.cfg.write_fields)
      harness::write_field_csv(dir / numbered("estimate", rec.run, ".csv"),
                               dct::ModeBasis(rec.final_state.modes, r.cfg.grid).field(rec.final_state.beta_hat));
  }
  const auto agg = harness::aggregate(runs);
  harness::write_aggregate_csv(dir / "aggregate.csv", agg);
  if (r.cfg.write_fields) harness::write_field_csv(dir / "true_field.csv", harness::load_field(r.cfg.field, r.cfg.grid));
  harness::write_json(dir / "metadata.json", harness::run_metadata(r.cfg, r.overrides, runs));
  const auto& last = agg.back();
  out << "estimate: " << runs.size() << " run(s), " << r.cfg.iterations << " iterations; final mean mse "
      << last.mse_mean << ", ssim " << last.ssim_mean << "\n";
  return ok;
}

int cmd_compare(const Invocation& inv, std::ostream& out) {
  const Resolved r = resolve(inv);
  const fs::path dir(inv.out_dir);
  fs::create_directories(dir);
  const FieldGrid field = harness::load_field(r.cfg.field, r.cfg.grid);
  const auto rows = harness::compare_models(field, r.cfg.compare.mode_counts, r.cfg.compare.rbf_layouts, r.cfg.ssim);
  harness::write_compare_csv(dir / "compare.csv", rows);
  harness::write_json(dir / "metadata.json", harness::run_metadata(r.cfg, r.overrides, {}));
  for (const auto& row : rows) out << row.model << ' ' << row.count << " mse " << row.mse << " ssim " << row.ssim << '\n';
  return ok;
}

int cmd_field_gen(const Invocation& inv, std::ostream& out) {
  const Resolved r = resolve(inv);
  const fs::path dir(inv.out_dir);
  fs::create_directories(dir);
  harness::write_field_csv(dir / "field.csv", harness::load_field(r.cfg.field, r.cfg.grid));
  out << "field-gen: wrote " << (dir / "field.csv").string() << '\n';
  return ok;
}

int cmd_validate(const Invocation& inv, std::ostream& out) {
  const Resolved r = resolve(inv);
  json echo = harness::to_json(r.cfg);
  echo["overrides"] = r.overrides;
  out << echo.dump(2) << '\n';
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scalar field estimation from quantized measurements in the DCT domain", "fieldmap"};
  app.require_subcommand(1);
  Invocation inv;

  auto* estimate = app.add_subcommand("estimate", "run the online estimator with active sensing; writes per-run CSVs");
  add_common(*estimate, inv, true);
  estimate->add_option("--jobs", inv.jobs, "parallel Monte-Carlo runs")->check(CLI::PositiveNumber);
  auto* compare = app.add_subcommand("compare", "tabulate optimal DCT truncation vs least-squares RBF fits");
  add_common(*compare, inv, true);
  auto* field_gen = app.add_subcommand("field-gen", "write the configured true field as a dense CSV");
  add_common(*field_gen, inv, true);
  auto* validate = app.add_subcommand("validate-config", "check a config and echo it fully resolved");
  add_common(*validate, inv, false);

  std::string schema_help = "Config keys (any may be set with --set KEY=VALUE):\n";
  for (const auto& e : harness::config_schema())
    schema_help += "  " + std::string(e.key) + std::string(std::max<std::size_t>(2, 24 - e.key.size()), ' ') +
                   std::string(e.description) + "\n";
  schema_help +=
      "Exit codes: 0 ok, 1 runtime failure, 2 usage error, 3 unreadable config, 4 bad override, 5 invalid config";
  app.footer(schema_help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*estimate) return cmd_estimate(inv, out);
    if (*compare) return cmd_compare(inv, out);
    if (*field_gen) return cmd_field_gen(inv, out);
    return cmd_validate(inv, out);
  } catch (const harness::ConfigReadError& e) {
    err << "error: " << e.what() << '\n';
    return config_unreadable;
  } catch (const harness::OverrideError& e) {
    err << "error: " << e.what() << '\n';
    return bad_override;
  } catch (const harness::ConfigError& e) {
    err << "error: invalid config: " << e.what() << '\n';
    return invalid_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return runtime_failure;
  }
}

}  // namespace fieldmap::cli
