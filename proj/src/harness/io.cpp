#include "fieldmap/harness/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fieldmap::harness {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const FieldGrid& field) {
  auto out = open_out(path);
  const auto& v = field.values();
  for (Eigen::Index iy = 0; iy < v.cols(); ++iy) {
    for (Eigen::Index ix = 0; ix < v.rows(); ++ix) out << (ix ? "," : "") << v(ix, iy);
    out << '\n';
  }
  finish(out, path);
}

FieldGrid read_field_csv(const std::filesystem::path& path, const GridSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file '" + path.string() + "'");
  Eigen::MatrixXd values(spec.n_x(), spec.n_y());
  std::string line;
  int iy = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (iy >= spec.n_y()) throw std::runtime_error(path.string() + ": more than n_y = " + std::to_string(spec.n_y()) + " rows");
    std::stringstream ss(line);
    std::string cell;
    int ix = 0;
    while (std::getline(ss, cell, ',')) {
      if (ix >= spec.n_x()) throw std::runtime_error(path.string() + ": row " + std::to_string(iy) + " has more than n_x values");
      try {
        values(ix, iy) = std::stod(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ": bad number '" + cell + "' in row " + std::to_string(iy));
      }
      ++ix;
    }
    if (ix != spec.n_x()) throw std::runtime_error(path.string() + ": row " + std::to_string(iy) + " has " + std::to_string(ix) + " values");
    ++iy;
  }
  if (iy != spec.n_y()) throw std::runtime_error(path.string() + ": expected " + std::to_string(spec.n_y()) + " rows");
  return FieldGrid(spec, std::move(values));
}

void write_run_csv(const std::filesystem::path& path, const RunRecord& record) {
  auto out = open_out(path);
  out << "k,x,y,Ix,Iy,z,mse,ssim\n";
  for (const auto& r : record.rows) {
    out << r.k << ',' << r.position.x << ',' << r.position.y << ',' << r.index.ix << ',' << r.index.iy << ',';
    if (r.z >= 0) out << r.z;
    out << ',' << r.mse << ',' << r.ssim << '\n';
  }
  finish(out, path);
}

void write_aggregate_csv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows) {
  auto out = open_out(path);
  out << "k,mse_mean,mse_std,ssim_mean,ssim_std\n";
  for (const auto& r : rows)
    out << r.k << ',' << r.mse_mean << ',' << r.mse_std << ',' << r.ssim_mean << ',' << r.ssim_std << '\n';
  finish(out, path);
}

void write_compare_csv(const std::filesystem::path& path, const std::vector<CompareRow>& rows) {
  auto out = open_out(path);
  out << "model,count,j_x,j_y,mse,ssim\n";
  for (const auto& r : rows)
    out << r.model << ',' << r.count << ',' << r.j_x << ',' << r.j_y << ',' << r.mse << ',' << r.ssim << '\n';
  finish(out, path);
}

json state_to_json(const estimator::EstimatorState& state) {
  json modes = json::array();
  for (const auto& m : state.modes.modes()) modes.push_back({m.u, m.v});
  std::vector<double> beta(state.beta_hat.data(), state.beta_hat.data() + state.beta_hat.size());
  return {{"k", state.k},
          {"n_x", state.modes.n_x()},
          {"n_y", state.modes.n_y()},
          {"modes", modes},
          {"beta_hat", beta},
          {"h_tilde", matrix_to_json(state.h_tilde)}};
}

estimator::EstimatorState state_from_json(const json& j) {
  std::vector<dct::Mode> modes;
  for (const auto& m : j.at("modes")) modes.push_back({m.at(0).get<int>(), m.at(1).get<int>()});
  dct::ModeSet set(std::move(modes), j.at("n_x").get<int>(), j.at("n_y").get<int>());
  const auto n = static_cast<Eigen::Index>(set.size());
  const auto beta = j.at("beta_hat").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(beta.size()) != n) throw std::invalid_argument("state: beta_hat length mismatch");
  Eigen::MatrixXd h(n, n);
  const json& rows = j.at("h_tilde");
  if (static_cast<Eigen::Index>(rows.size()) != n) throw std::invalid_argument("state: h_tilde shape mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("state: h_tilde shape mismatch");
    for (Eigen::Index c = 0; c < n; ++c) h(i, c) = row[static_cast<std::size_t>(c)];
  }
  return {std::move(set), Eigen::Map<const Eigen::VectorXd>(beta.data(), n), std::move(h), j.at("k").get<long>()};
}

json run_metadata(const ScenarioConfig& cfg, const std::vector<std::string>& overrides,
                  const std::vector<RunRecord>& runs) {
  json runs_j = json::array();
  for (const auto& r : runs)
    runs_j.push_back({{"run", r.run}, {"seed", r.seed}, {"rows", r.rows.size()}, {"seconds", r.seconds}});
  return {{"config", to_json(cfg)},
          {"overrides", overrides},
          {"seeds", {{"master", cfg.seed},
                     {"field", cfg.field.path ? json(nullptr) : json(cfg.field.recipe.seed)},
                     {"streams", "noise, exploration derived from (master, run)"}}},
          {"ssim", to_json(cfg.ssim)},
          {"initial_measurement", "taken at planner.start before the first move"},
          {"runs", runs_j}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace fieldmap::harness
