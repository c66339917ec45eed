#include "fieldmap/harness/scenario.hpp"

#include "fieldmap/dct.hpp"
#include "fieldmap/harness/field_gen.hpp"
#include "fieldmap/metrics.hpp"
#include "fieldmap/planner.hpp"
#include "fieldmap/sensing.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace fieldmap::harness {

estimator::EstimatorState switch_modes(const estimator::EstimatorState& state, const dct::ModeSet& target) {
  std::vector<dct::Mode> kept;
  for (const auto& m : state.modes.modes())
    if (target.contains(m)) kept.push_back(m);
  if (kept.size() == state.modes.size()) return estimator::refine_modes(state, target);
  const dct::ModeSet shrunk(std::move(kept), state.modes.n_x(), state.modes.n_y());
  return estimator::refine_modes(estimator::refine_modes(state, shrunk), target);
}

RunRecord run_single(const ScenarioConfig& cfg, int run) {
  const auto t0 = std::chrono::steady_clock::now();
  const GridSpec& grid = cfg.grid;
  const sensing::Quantizer q(cfg.thresholds);
  const planner::PlannerConfig pcfg = cfg.planner.resolve(grid);
  Rng noise_rng = make_stream(cfg.seed, static_cast<std::uint64_t>(run), Stream::noise);
  Rng explore_rng = make_stream(cfg.seed, static_cast<std::uint64_t>(run), Stream::exploration);

  FieldGrid truth = load_field(cfg.field, grid);
  auto basis = std::make_unique<dct::ModeBasis>(cfg.modes.select(grid), grid);
  estimator::EstimatorState state = estimator::EstimatorState::initial(basis->modes());
  planner::VehicleState vehicle = planner::VehicleState::start(cfg.planner.start, grid);

  RunRecord rec;
  rec.run = run;
  rec.seed = cfg.seed;
  rec.rows.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  auto record = [&](long k, Point pos, PositionIndex idx, int z) {
    const FieldGrid estimate = basis->field(state.beta_hat);
    rec.rows.push_back({k, pos, idx, z, metrics::mse(truth, estimate), metrics::ssim(truth, estimate, cfg.ssim)});
  };
  record(0, vehicle.position, vehicle.index, -1);

  auto next_switch = cfg.switches.begin();
  for (long k = 0; k < cfg.iterations; ++k) {
    for (; next_switch != cfg.switches.end() && next_switch->k == k; ++next_switch) {
      if (next_switch->field) truth = load_field(*next_switch->field, grid);
      if (next_switch->modes) {
        const dct::ModeSet target = next_switch->modes->select(grid);
        ModeSwitchSnapshot snap{k, state, switch_modes(state, target)};
        state = snap.after;
        rec.mode_switches.push_back(std::move(snap));
        basis = std::make_unique<dct::ModeBasis>(target, grid);
      }
    }

    const Point pos = vehicle.position;
    const PositionIndex idx = vehicle.index;
    const int z = sensing::measure(truth, idx, cfg.noise, q, noise_rng);
    state = estimator::newton_update(state, cfg.estimator, basis->vector(idx), z, q);
    const Eigen::MatrixXd h_k = estimator::regularized_hessian(state, cfg.estimator);
    vehicle = planner::advance(vehicle, state.beta_hat, pcfg, h_k, q, cfg.estimator.eta, *basis, explore_rng).vehicle;
    record(k + 1, pos, idx, z);
  }

  rec.final_state = state;
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<RunRecord> run_scenario(const ScenarioConfig& cfg, int jobs) {
  cfg.validate();
  std::vector<RunRecord> out(static_cast<std::size_t>(cfg.runs));
  const int workers = std::max(1, std::min(jobs, cfg.runs));
  if (workers == 1) {
    for (int r = 0; r < cfg.runs; ++r) out[static_cast<std::size_t>(r)] = run_single(cfg, r);
    return out;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int r = next++; r < cfg.runs; r = next++) {
        try {
          out[static_cast<std::size_t>(r)] = run_single(cfg, r);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs) {
  std::vector<AggregateRow> out;
  if (runs.empty()) return out;
  const std::size_t n_rows = runs.front().rows.size();
  const double n = static_cast<double>(runs.size());
  out.reserve(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double sm = 0.0, ss = 0.0;
    for (const auto& r : runs) {
      sm += r.rows.at(i).mse;
      ss += r.rows.at(i).ssim;
    }
    AggregateRow row{runs.front().rows[i].k, sm / n, 0.0, ss / n, 0.0};
    double vm = 0.0, vs = 0.0;
    for (const auto& r : runs) {
      vm += (r.rows[i].mse - row.mse_mean) * (r.rows[i].mse - row.mse_mean);
      vs += (r.rows[i].ssim - row.ssim_mean) * (r.rows[i].ssim - row.ssim_mean);
    }
    row.mse_std = std::sqrt(vm / n);
    row.ssim_std = std::sqrt(vs / n);
    out.push_back(row);
  }
  return out;
}

}  // namespace fieldmap::harness
