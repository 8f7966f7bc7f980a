#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "riscom/channel.hpp"
#include "riscom/harness.hpp"

namespace riscom {

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  for (auto& th : pool) th.join();
}

SweepRow make_row(std::string_view experiment, double value, const RunResult& r) {
  SweepRow row;
  row.experiment = experiment;
  row.scheme = scheme_name(r.scheme);
  row.sweep_value = value;
  row.seed = r.seed;
  row.rate_relaxed = r.rate_relaxed;
  row.rate_extracted = r.rate_extracted;
  row.gain = r.gain;
  row.feasible = r.feasible;
  row.outer_iters = r.outer_iters;
  row.inner_iters_total = r.inner_iters_total;
  row.wall_time = r.wall_time;
  return row;
}

void sort_rows(std::vector<SweepRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.experiment, a.scheme, a.sweep_value, a.seed) <
           std::tie(b.experiment, b.scheme, b.sweep_value, b.seed);
  });
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::VsL: return "vs_L";
    case Experiment::VsE: return "vs_e";
    case Experiment::VsGamma: return "vs_gamma";
    case Experiment::VsPower: return "vs_power";
    case Experiment::PerMr: return "per_mr";
  }
  return "?";
}

Experiment parse_experiment(std::string_view s) {
  for (Experiment e : {Experiment::VsL, Experiment::VsE, Experiment::VsGamma, Experiment::VsPower, Experiment::PerMr})
    if (s == experiment_name(e)) return e;
  throw InvalidConfig("unknown experiment '" + std::string(s) + "'");
}

int effective_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RISCOM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

void validate_spec(const SweepSpec& spec) {
  if (spec.values.empty()) throw InvalidConfig("sweep values are empty");
  for (std::size_t i = 1; i < spec.values.size(); ++i)
    if (!(spec.values[i] > spec.values[i - 1])) throw InvalidConfig("sweep values must be strictly increasing");
  if (spec.seeds.empty()) throw InvalidConfig("seed list is empty");
  if (spec.schemes.empty() && spec.experiment != Experiment::PerMr) throw InvalidConfig("scheme list is empty");
  spec.scenario.validate();
}

ScenarioConfig apply_sweep_value(Experiment e, const ScenarioConfig& base, double value) {
  ScenarioConfig cfg = base;
  const std::string v = std::to_string(value);
  switch (e) {
    case Experiment::VsL: {
      if (!is_integer(value) || value < 1) throw InvalidSweepValue("L = " + v + " is not a positive integer");
      const int L = static_cast<int>(value);
      const int lx = static_cast<int>(std::floor(std::sqrt(static_cast<double>(L)) + 1e-9));
      if (L % lx != 0) throw InvalidSweepValue("L = " + v + " does not factor as floor(sqrt L) x L/floor(sqrt L)");
      cfg.L_x = lx;
      cfg.L_y = L / lx;
      break;
    }
    case Experiment::VsE:
      if (!is_integer(value) || value < 1 || value > 16) throw InvalidSweepValue("e = " + v + " is not in 1..16");
      cfg.e = static_cast<int>(value);
      break;
    case Experiment::VsGamma:
      if (!(value >= 0.0)) throw InvalidSweepValue("gamma_th = " + v + " mW is negative");
      cfg.gamma_th = value * 1e-3;
      break;
    case Experiment::VsPower:
      if (!std::isfinite(value)) throw InvalidSweepValue("P_max = " + v + " dBm is not finite");
      cfg.P_max = dbm_to_watt(value);
      break;
    case Experiment::PerMr: {
      if (!is_integer(value) || value < 1 || value > static_cast<double>(cfg.mr_positions.size()))
        throw InvalidSweepValue("MR index " + v + " out of range");
      cfg.target_pos = cfg.mr_positions[static_cast<std::size_t>(value) - 1];
      break;
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidConfig& ex) {
    throw InvalidSweepValue(ex.what());
  }
  return cfg;
}

RunResult run_point(Scheme s, const ScenarioConfig& cfg, std::uint64_t seed) {
  return run_scheme(s, gen_channels(cfg, seed), cfg, seed);
}

SweepOutput run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  if (spec.experiment == Experiment::PerMr) return per_mr_profile(spec.scenario, spec.seeds, spec.threads);

  struct Task {
    double value;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (double v : spec.values)
    for (auto s : spec.seeds) tasks.push_back({v, s});

  const std::string name(experiment_name(spec.experiment));
  SweepOutput out;
  std::mutex mu;
  parallel_for(tasks.size(), effective_threads(spec.threads), [&](std::size_t i) {
    const Task& t = tasks[i];
    std::vector<SweepRow> rows;
    std::vector<PointError> errs;
    try {
      const ScenarioConfig cfg = apply_sweep_value(spec.experiment, spec.scenario, t.value);
      const ChannelRealization ch = gen_channels(cfg, t.seed);
      for (Scheme s : spec.schemes) {
        try {
          rows.push_back(make_row(name, t.value, run_scheme(s, ch, cfg, t.seed)));
        } catch (const std::exception& ex) {
          errs.push_back({t.value, t.seed, std::string(scheme_name(s)) + ": " + ex.what()});
        }
      }
    } catch (const std::exception& ex) {
      errs.push_back({t.value, t.seed, ex.what()});
    }
    std::lock_guard lock(mu);
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    out.errors.insert(out.errors.end(), errs.begin(), errs.end());
  });
  sort_rows(out.rows);
  std::sort(out.errors.begin(), out.errors.end(), [](const PointError& a, const PointError& b) {
    return std::tie(a.sweep_value, a.seed, a.message) < std::tie(b.sweep_value, b.seed, b.message);
  });
  return out;
}

SweepOutput per_mr_profile(const ScenarioConfig& cfg, std::span<const std::uint64_t> seeds, int threads) {
  cfg.validate();
  const int K = cfg.K;
  struct Task {
    int k;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int k = 0; k < K; ++k)
    for (auto s : seeds) tasks.push_back({k, s});

  SweepOutput out;
  std::mutex mu;
  parallel_for(tasks.size(), effective_threads(threads), [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      ScenarioConfig c = cfg;
      c.target_pos = cfg.mr_positions[t.k];
      // channels do not depend on the target, only the steering vector does
      const ChannelRealization ch = gen_channels(c, t.seed);
      const RunResult r = alternate(ch, c, t.seed);
      SweepRow row = make_row("per_mr", t.k + 1, r);
      row.rate_relaxed = r.user_rates.size() ? r.user_rates[t.k] : 0.0;
      row.rate_extracted = r.user_rates_extracted.size() ? r.user_rates_extracted[t.k] : 0.0;
      const double echo = rician_mean_power(c, (c.mr_positions[t.k] - c.ris_pos).norm());
      row.gain = r.gain * echo * echo;  // RIS -> target -> RIS
      std::lock_guard lock(mu);
      out.rows.push_back(row);
    } catch (const std::exception& ex) {
      std::lock_guard lock(mu);
      out.errors.push_back({static_cast<double>(t.k + 1), t.seed, ex.what()});
    }
  });
  sort_rows(out.rows);
  std::sort(out.errors.begin(), out.errors.end(), [](const PointError& a, const PointError& b) {
    return std::tie(a.sweep_value, a.seed, a.message) < std::tie(b.sweep_value, b.seed, b.message);
  });
  return out;
}

}  // namespace riscom
