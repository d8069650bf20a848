// Copyright 2026 The bpp Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bppsim: command-line front end of the simulator.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bpp/experiment.hpp"
#include "json.hpp"

namespace {

using bpp::ConfigError;
using bpp::ExperimentSpec;
using nlohmann::json;

/// Flags shared by run, sweep and validate tallies. Values given on the
/// command line override the config file.
struct SpecFlags {
  std::string config;
  std::string protocol = "scfd";
  std::string profile = "desk";
  std::uint32_t n = 1000;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t d = 0;
  std::string majority = "A";
  std::uint32_t f = 0;
  std::string adversary = "none";
  std::string target;
  std::uint32_t trials = 1;
  std::string seed = "1";
  std::uint64_t max_exchanges = 0;
  std::string out;
  std::string summary;
  std::string trace = "off";
  std::string trace_dir;
  unsigned threads = 0;
  bool check_invariants = false;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app) {
    opts["config"] = app->add_option("--config", config, "JSON file with ExperimentSpec fields");
    opts["protocol"] = app->add_option("--protocol", protocol, "acpd | scfd | scfd-tf | combined");
    opts["profile"] = app->add_option("--profile", profile, "theory-acpd | theory-scfd | desk");
    opts["n"] = app->add_option("--n", n, "population size");
    opts["a"] = app->add_option("--a", a, "nodes starting with A");
    opts["b"] = app->add_option("--b", b, "nodes starting with B");
    opts["d"] = app->add_option("--d", d, "tally gap, used with --majority");
    opts["majority"] = app->add_option("--majority", majority, "A | B");
    opts["f"] = app->add_option("--f", f, "corruption budget");
    opts["adversary"] = app->add_option(
        "--adversary", adversary,
        "none | static-flip | weak-first-dual | oblivious-first-dual | full-booster");
    opts["target"] = app->add_option("--target", target, "value the first-dual adversaries push");
    opts["trials"] = app->add_option("--trials", trials, "independent runs");
    opts["seed"] = app->add_option("--seed", seed, "master seed, decimal or 0x-hex");
    opts["max_exchanges"] = app->add_option("--max-exchanges", max_exchanges, "0 = default");
    opts["out"] = app->add_option("--out", out, "per-trial CSV output");
    opts["summary"] = app->add_option("--summary", summary, "JSON summary output");
    opts["trace"] = app->add_option("--trace", trace, "off | on-failure | full");
    opts["trace_dir"] = app->add_option("--trace-dir", trace_dir, "directory for trace files");
    opts["threads"] = app->add_option("--threads", threads, "worker threads, 0 = all cores");
    opts["check_invariants"] =
        app->add_flag("--check-invariants", check_invariants, "per-exchange debug assertions");
  }

  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }

  ExperimentSpec build() const {
    json file = json::object();
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", config));
      try {
        in >> file;
      } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config file '{}': {}", config, e.what()));
      }
    }
    // A flag wins over the file; the file wins over the flag default.
    auto pick = [&](const std::string& flag, const char* key, auto flag_value) {
      using T = decltype(flag_value);
      if (given(flag) || !file.contains(key)) return flag_value;
      try {
        if constexpr (std::is_same_v<T, std::string>) {
          const json& v = file[key];
          return v.is_string() ? v.get<std::string>() : v.dump();
        } else {
          return file[key].get<T>();
        }
      } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config field '{}': {}", key, e.what()));
      }
    };
    ExperimentSpec s;
    const std::string proto = pick("protocol", "protocol", protocol);
    const auto p = bpp::parse_protocol(proto);
    if (!p) throw ConfigError(fmt::format("unknown protocol '{}'", proto));
    s.protocol = *p;
    s.profile = pick("profile", "profile", profile);
    s.n = pick("n", "n", n);
    s.f = pick("f", "f", f);
    s.adversary = pick("adversary", "adversary", adversary);
    const std::string tgt = pick("target", "adversary_target", target);
    if (!tgt.empty()) {
      const auto v = bpp::parse_value(tgt);
      if (!v || !bpp::is_set(*v)) throw ConfigError(fmt::format("bad target value '{}'", tgt));
      s.adversary_target = v;
    }
    s.trials = pick("trials", "trials", trials);
    const std::string seed_text = pick("seed", "master_seed", seed);
    const auto sd = bpp::parse_seed(seed_text);
    if (!sd) throw ConfigError(fmt::format("bad seed '{}'", seed_text));
    s.master_seed = *sd;
    s.max_exchanges = pick("max_exchanges", "max_exchanges", max_exchanges);
    s.output = pick("out", "output", out);
    s.summary_output = pick("summary", "summary_output", summary);
    const std::string tr = pick("trace", "trace", trace);
    const auto tm = bpp::parse_trace_mode(tr);
    if (!tm) throw ConfigError(fmt::format("bad trace mode '{}'", tr));
    s.trace = *tm;
    s.trace_dir = pick("trace_dir", "trace_dir", trace_dir);
    s.threads = pick("threads", "threads", threads);
    s.check_invariants = pick("check_invariants", "check_invariants", check_invariants);

    const bool gap_flag = given("d") || (!given("a") && !given("b") && file.contains("d"));
    if (gap_flag) {
      const std::string side = pick("majority", "majority", majority);
      const auto m = bpp::parse_value(side);
      if (!m || !bpp::is_set(*m)) throw ConfigError(fmt::format("bad majority '{}'", side));
      bpp::set_gap(s, pick("d", "d", d), *m);
    } else {
      s.a = pick("a", "a", a);
      s.b = pick("b", "b", b);
      if (!given("a") && !given("b") && !file.contains("a") && !file.contains("b")) {
        s.a = s.n;
        s.b = 0;
      } else if ((given("a") || file.contains("a")) && !given("b") && !file.contains("b") &&
                 s.a <= s.n) {
        s.b = s.n - s.a;
      }
    }
    s.validate();
    return s;
  }
};

void print_stats(const bpp::ExperimentStats& s) {
  fmt::print("trials {}  correct {}  minority {}  failed {}  budget {}  mixed {}\n", s.trials,
             s.correct_count, s.minority_count, s.failed_count, s.budget_count, s.mixed_count);
  fmt::print("success rate {:.4f}  (95% CI {:.4f} .. {:.4f})\n", s.success_rate, s.interval.low,
             s.interval.high);
  fmt::print("parallel time mean {:.1f}  median {:.1f}  mean drift {:.1f}\n",
             s.mean_parallel_time, s.median_parallel_time, s.mean_drift_max);
}

void print_tallies(const bpp::TalliesReport& rep) {
  for (const auto& c : rep.checks) {
    fmt::print("{:<28} {} obs {:>7}  violations {:>5} ({:.4f}, allowance {:.4f})  mean {:.2f} "
               "in [{:.2f}, {:.2f}]\n",
               c.name, c.passed ? "PASS" : "FAIL", c.observations, c.violations,
               c.violation_fraction, c.theory_fraction, c.measured_mean, c.envelope_low,
               c.envelope_high);
  }
}

void print_lower_bound(const bpp::LowerBoundReport& r) {
  fmt::print("{}: minority decided {:.4f}, control success {:.4f}, ratio threshold 0.8 -> {}\n",
             r.scenario, r.minority_rate, r.control_success, r.reproduced ? "reproduced" : "not reproduced");
}

int run_main(int argc, char** argv) {
  CLI::App app{"Byzantine-resilient majority population protocols simulator"};
  app.require_subcommand(1);

  SpecFlags run_flags;
  std::vector<std::string> run_validations;
  auto* run = app.add_subcommand("run", "one Monte-Carlo experiment");
  run_flags.attach(run);
  run->add_option("--validate", run_validations, "extra checks: tallies");

  SpecFlags sweep_flags;
  std::string grid_path;
  auto* sweep = app.add_subcommand("sweep", "grid of experiments from a JSON file");
  sweep_flags.attach(sweep);
  sweep->add_option("--grid", grid_path, "JSON object of value arrays")->required();

  auto* validate = app.add_subcommand("validate", "statistical checks");
  validate->require_subcommand(1);
  std::uint32_t drift_n = 1000;
  double drift_c = 1.0;
  std::uint32_t drift_trials = 100;
  std::string drift_seed = "1";
  auto* drift = validate->add_subcommand("drift", "lifetime-counter drift against 2 zeta");
  drift->add_option("--n", drift_n);
  drift->add_option("--drift-c", drift_c);
  drift->add_option("--trials", drift_trials);
  drift->add_option("--seed", drift_seed);

  SpecFlags tally_flags;
  auto* tallies = validate->add_subcommand("tallies", "per-phase tally envelopes");
  tally_flags.attach(tallies);

  std::uint32_t sched_n = 20;
  std::uint64_t sched_draws = 1000000;
  std::string sched_seed = "1";
  auto* scheduler = validate->add_subcommand("scheduler", "pair sampler chi-squared test");
  scheduler->add_option("--n", sched_n);
  scheduler->add_option("--draws", sched_draws);
  scheduler->add_option("--seed", sched_seed);

  std::uint32_t coin_n = 1024;
  double coin_c = 1.0;
  std::uint64_t coin_draws = 1000000;
  std::string coin_seed = "1";
  auto* coin = validate->add_subcommand("coin", "biased coin frequency test");
  coin->add_option("--n", coin_n);
  coin->add_option("--bias-c", coin_c);
  coin->add_option("--draws", coin_draws);
  coin->add_option("--seed", coin_seed);

  std::uint32_t demo_trials = 200;
  std::string demo_seed = "1";
  std::string demo_protocol = "scfd";
  auto* demo = app.add_subcommand("demo-lower-bound", "canned lower-bound scenarios");
  demo->add_option("--trials", demo_trials);
  demo->add_option("--seed", demo_seed);
  demo->add_option("--protocol", demo_protocol);

  CLI11_PARSE(app, argc, argv);

  auto seed_of = [](const std::string& text) {
    const auto s = bpp::parse_seed(text);
    if (!s) throw ConfigError(fmt::format("bad seed '{}'", text));
    return *s;
  };

  if (*run) {
    const ExperimentSpec spec = run_flags.build();
    bool ok = true;
    bpp::ExperimentStats stats;
    for (const auto& v : run_validations)
      if (v != "tallies") throw ConfigError(fmt::format("unknown validation '{}'", v));
    if (!run_validations.empty()) {
      const auto rep = bpp::validate_phase_tallies(spec);
      print_tallies(rep);
      stats = rep.stats;
      ok = rep.passed;
    } else {
      stats = bpp::monte_carlo(spec).stats;
    }
    print_stats(stats);
    return ok && stats.mixed_count == 0 ? 0 : 1;
  }
  if (*sweep) {
    std::ifstream in(grid_path);
    if (!in) throw ConfigError(fmt::format("cannot read grid file '{}'", grid_path));
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentSpec base = sweep_flags.build();
    const auto rows = bpp::sweep(buf.str(), base);
    bool ok = true;
    fmt::print("{}\n", bpp::sweep_csv_header());
    for (const auto& row : rows) {
      fmt::print("{}\n", bpp::sweep_csv_row(row));
      ok = ok && row.error.empty() && row.stats.mixed_count == 0;
    }
    return ok ? 0 : 1;
  }
  if (*drift) {
    const auto rep = bpp::validate_drift(drift_n, drift_c, drift_trials, seed_of(drift_seed));
    fmt::print("drift n={} c={} trials={} exchanges/trial={} bound 2zeta={:.1f} worst gap={}\n",
               rep.n, rep.drift_c, rep.trials, rep.exchanges_per_trial, rep.bound, rep.worst_gap);
    fmt::print("pass fraction {:.4f} (theory {:.4f}, tolerance 0.96)\n", rep.pass_fraction,
               rep.theory_fraction);
    return rep.pass_fraction >= 0.96 ? 0 : 1;
  }
  if (*tallies) {
    const auto rep = bpp::validate_phase_tallies(tally_flags.build());
    print_tallies(rep);
    print_stats(rep.stats);
    return rep.passed ? 0 : 1;
  }
  if (*scheduler) {
    const auto rep = bpp::validate_scheduler(sched_n, sched_draws, seed_of(sched_seed));
    fmt::print("chi-squared {:.2f} on {} df, p = {:.4g}; worst inclusion |z| = {:.2f} -> {}\n",
               rep.statistic, rep.degrees_of_freedom, rep.p_value, rep.worst_inclusion_z,
               rep.passed ? "PASS" : "FAIL");
    return rep.passed ? 0 : 1;
  }
  if (*coin) {
    const auto rep = bpp::validate_coin(coin_n, coin_c, coin_draws, seed_of(coin_seed));
    fmt::print("L = {}, P(1) = {:.6f}, observed {}/{} (z = {:.2f}), deepest {} -> {}\n",
               rep.rounds, rep.expected, rep.ones, rep.draws, rep.z, rep.deepest,
               rep.passed ? "PASS" : "FAIL");
    return rep.passed ? 0 : 1;
  }
  if (*demo) {
    const auto p = bpp::parse_protocol(demo_protocol);
    if (!p) throw ConfigError(fmt::format("unknown protocol '{}'", demo_protocol));
    const std::uint64_t s = seed_of(demo_seed);
    const auto flip = bpp::demo_static_flip(1000, 505, 495, 10, 495, 515, demo_trials, *p, s);
    print_lower_bound(flip);
    const auto dual = bpp::demo_first_dual(1000, 504, 496, 10, demo_trials, *p, s);
    print_lower_bound(dual);
    return flip.reproduced && dual.reproduced ? 0 : 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}
