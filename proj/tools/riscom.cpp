#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riscom/beamformer.hpp"
#include "riscom/channel.hpp"
#include "riscom/harness.hpp"
#include "riscom/oracles.hpp"
#include "riscom/scenario_io.hpp"
#include "riscom/simd/kernels.hpp"

using namespace riscom;

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> v;
  for (const auto& t : split(s)) {
    try {
      v.push_back(std::stod(t));
    } catch (const std::exception&) {
      throw InvalidConfig("bad sweep value '" + t + "'");
    }
  }
  return v;
}

// "n" means seeds 0..n-1; a comma list is taken literally
std::vector<std::uint64_t> parse_seeds(const std::string& s, int fallback) {
  std::vector<std::uint64_t> out;
  if (s.empty()) {
    for (int i = 0; i < fallback; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
  }
  const auto parts = split(s);
  try {
    if (parts.size() == 1 && s.find(',') == std::string::npos) {
      const long n = std::stol(parts[0]);
      if (n < 1) throw InvalidConfig("seed count must be >= 1");
      for (long i = 0; i < n; ++i) out.push_back(static_cast<std::uint64_t>(i));
      return out;
    }
    for (const auto& p : parts) out.push_back(std::stoull(p));
  } catch (const std::logic_error&) {
    throw InvalidConfig("bad seed list '" + s + "'");
  }
  return out;
}

std::vector<double> default_values(Experiment e, const ScenarioConfig& cfg) {
  switch (e) {
    case Experiment::VsL: return {4, 16, 36, 64};
    case Experiment::VsE: return {1, 2, 3, 4, 5};
    case Experiment::VsGamma: return {0.25e-4, 0.5e-4, 0.75e-4, 1e-4};
    case Experiment::VsPower: return {18, 21, 24, 27, 30};
    case Experiment::PerMr: {
      std::vector<double> v;
      for (int k = 1; k <= cfg.K; ++k) v.push_back(k);
      return v;
    }
  }
  return {};
}

ScenarioConfig scenario_arg(const std::string& path) {
  return path.empty() ? default_scenario() : load_scenario(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ISAC sum-rate optimisation with a discrete-phase RIS"};
  app.require_subcommand(1);

  std::string experiment, config, values, schemes = "proposed,without_ris,rps,apt", seeds, out_dir = "out";
  int threads = 0;
  auto* run = app.add_subcommand("run", "run one experiment sweep and write CSV/SVG output");
  run->add_option("--experiment", experiment, "vs_L | vs_e | vs_gamma | vs_power | per_mr")->required();
  run->add_option("--config", config, "scenario JSON (defaults when omitted)");
  run->add_option("--values", values, "comma-separated sweep values (L, bits, gamma_th in mW, P_max in dBm)");
  run->add_option("--schemes", schemes, "comma-separated subset of proposed,without_ris,rps,apt");
  run->add_option("--seeds", seeds, "seed count n (0..n-1) or comma-separated list; default mc_drops");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--threads", threads, "worker threads (RISCOM_THREADS caps it)");

  std::uint64_t oracle_seed = 2024;
  auto* oracle = app.add_subcommand("oracle", "run the tiny-instance oracle suite");
  oracle->add_option("--seed", oracle_seed, "instance seed");

  auto* dump = app.add_subcommand("default-config", "print the default scenario as JSON");

  std::string ch_config, ch_out;
  std::uint64_t ch_seed = 0;
  auto* channels = app.add_subcommand("channels", "dump one channel realisation as CSV");
  channels->add_option("--config", ch_config, "scenario JSON");
  channels->add_option("--seed", ch_seed, "channel seed");
  channels->add_option("--out", ch_out, "output file (stdout when omitted)");

  std::string tr_config;
  std::uint64_t tr_seed = 0;
  auto* trace = app.add_subcommand("trace", "SCA iterates for one random phase draw, as CSV");
  trace->add_option("--config", tr_config, "scenario JSON");
  trace->add_option("--seed", tr_seed, "channel and phase seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      SweepSpec spec;
      spec.experiment = parse_experiment(experiment);
      spec.scenario = scenario_arg(config);
      spec.values = values.empty() ? default_values(spec.experiment, spec.scenario) : parse_values(values);
      for (const auto& s : split(schemes)) spec.schemes.push_back(parse_scheme(s));
      spec.seeds = parse_seeds(seeds, spec.scenario.mc_drops);
      spec.threads = threads;
      const SweepOutput res = run_sweep(spec);
      for (const auto& e : res.errors)
        std::fprintf(stderr, "point %g seed %llu: %s\n", e.sweep_value, static_cast<unsigned long long>(e.seed),
                     e.message.c_str());
      if (res.rows.empty()) {
        std::fprintf(stderr, "no rows produced\n");
        return 2;
      }
      emit(res.rows, out_dir);
      std::printf("%zu rows -> %s (simd: %s)\n", res.rows.size(), out_dir.c_str(),
                  std::string(simd::isa_name(simd::active_isa())).c_str());
      if (!res.errors.empty()) return 2;
      bool any_feasible = false;
      for (const auto& r : res.rows) any_feasible = any_feasible || r.feasible;
      return any_feasible ? 0 : 1;
    }
    if (*oracle) {
      bool ok = true;
      for (const auto& c : oracle::run_suite(oracle_seed)) {
        std::printf("%s %-28s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        ok = ok && c.pass;
      }
      return ok ? 0 : 2;
    }
    if (*dump) {
      std::cout << scenario_to_json(default_scenario());
      return 0;
    }
    if (*channels) {
      const ScenarioConfig cfg = scenario_arg(ch_config);
      const ChannelRealization ch = gen_channels(cfg, ch_seed);
      if (ch_out.empty()) {
        write_channel_csv(ch, std::cout);
      } else {
        std::ofstream f(ch_out);
        if (!f) throw IoError("cannot open " + ch_out);
        write_channel_csv(ch, f);
      }
      return 0;
    }
    if (*trace) {
      const ScenarioConfig cfg = scenario_arg(tr_config);
      const ChannelRealization ch = gen_channels(cfg, tr_seed);
      PhaseDraws draws(cfg, tr_seed);
      const ScaResult r = beamform_sca(draws.next(), ch, cfg);
      write_trace_csv(r.trace, std::cout);
      return 0;
    }
  } catch (const Infeasible& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
