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

#include "bpp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "bpp/combined.hpp"
#include "bpp/simulation.hpp"
#include "json.hpp"

namespace bpp {

namespace {

using nlohmann::json;

unsigned worker_count(unsigned requested, std::uint32_t jobs) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return std::max(1u, std::min<unsigned>(t, jobs));
}

/// Runs job(i) for i in [0, count) on `threads` workers; rethrows the
/// first exception.
template <class Job>
void parallel_for(std::uint32_t count, unsigned threads, Job job) {
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint32_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  const unsigned t = worker_count(threads, count);
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

json stats_json(const ExperimentStats& s) {
  return {{"trials", s.trials},
          {"correct_count", s.correct_count},
          {"minority_count", s.minority_count},
          {"failed_count", s.failed_count},
          {"budget_count", s.budget_count},
          {"mixed_count", s.mixed_count},
          {"success_rate", s.success_rate},
          {"wilson_low", s.interval.low},
          {"wilson_high", s.interval.high},
          {"mean_parallel_time", s.mean_parallel_time},
          {"median_parallel_time", s.median_parallel_time},
          {"mean_drift_max", s.mean_drift_max}};
}

json spec_json(const ExperimentSpec& s) {
  json j = {{"protocol", std::string(to_string(s.protocol))},
            {"profile", s.profile},
            {"n", s.n},
            {"a", s.a},
            {"b", s.b},
            {"f", s.f},
            {"adversary", s.adversary},
            {"trials", s.trials},
            {"master_seed", s.master_seed},
            {"max_exchanges", s.max_exchanges}};
  if (s.adversary_target) j["adversary_target"] = std::string(to_string(*s.adversary_target));
  return j;
}

}  // namespace

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid experiment: " + what); };
  if (n < 2) fail(fmt::format("n = {} (need n >= 2)", n));
  if (static_cast<std::uint64_t>(a) + b != n)
    fail(fmt::format("a + b = {} + {} does not equal n = {}", a, b, n));
  if (trials < 1) fail("trials must be at least 1");
  if (f > n) fail(fmt::format("f = {} exceeds n = {}", f, n));
  if (adversary == "none" && f > 0) fail("f > 0 needs an adversary");
  const auto names = strategy_names();
  if (std::find(names.begin(), names.end(), adversary) == names.end())
    fail(fmt::format("unknown adversary '{}'", adversary));
  const auto profiles = profile_names();
  if (std::find(profiles.begin(), profiles.end(), profile) == profiles.end())
    fail(fmt::format("unknown profile '{}'", profile));
}

void set_gap(ExperimentSpec& spec, std::uint32_t d, Value majority) {
  if (d > spec.n) throw ConfigError(fmt::format("gap {} exceeds n = {}", d, spec.n));
  if ((spec.n - d) % 2 != 0) ++d;
  if (d > spec.n) throw ConfigError(fmt::format("gap {} cannot be realised at n = {}", d, spec.n));
  const std::uint32_t big = (spec.n + d) / 2;
  const std::uint32_t small = spec.n - big;
  spec.a = majority == Value::B ? small : big;
  spec.b = spec.n - spec.a;
}

WilsonInterval wilson_interval(std::uint32_t k, std::uint32_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Value expected_majority(std::uint32_t a, std::uint32_t b) noexcept {
  return b > a ? Value::B : Value::A;
}

ExperimentStats summarize(const std::vector<RunResult>& runs, Value majority) {
  ExperimentStats s;
  s.trials = static_cast<std::uint32_t>(runs.size());
  std::vector<double> times;
  std::vector<double> drift;
  const Outcome right = majority == Value::A ? Outcome::DecidedA : Outcome::DecidedB;
  const Outcome wrong = majority == Value::A ? Outcome::DecidedB : Outcome::DecidedA;
  for (const RunResult& r : runs) {
    if (r.outcome == right) ++s.correct_count;
    if (r.outcome == wrong) ++s.minority_count;
    if (r.outcome == Outcome::Failed) ++s.failed_count;
    if (r.outcome == Outcome::BudgetExhausted) ++s.budget_count;
    if (r.outcome == Outcome::Mixed) ++s.mixed_count;
    times.push_back(r.parallel_time);
    drift.push_back(static_cast<double>(r.drift_max));
  }
  if (s.trials == 0) return s;
  s.success_rate = static_cast<double>(s.correct_count) / s.trials;
  s.interval = wilson_interval(s.correct_count, s.trials);
  s.mean_parallel_time = mean_of(times);
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  s.median_parallel_time = times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2.0;
  s.mean_drift_max = mean_of(drift);
  return s;
}

std::string csv_header() {
  return "trial,protocol,n,f,a,b,profile,seed,outcome,parallel_time,exchanges_total,drift_max";
}

std::string csv_row(std::uint32_t trial, const RunResult& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{:.6f},{},{}", trial, to_string(r.protocol), r.n,
                     r.f, r.a, r.b, r.profile, r.seed, to_string(r.outcome), r.parallel_time,
                     r.exchanges_total, r.drift_max);
}

std::string summary_json(const ExperimentReport& report) {
  json j = {{"spec", spec_json(report.spec)}, {"stats", stats_json(report.stats)}};
  return j.dump(2) + "\n";
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", tmp));
    out << content;
    if (!out.flush()) throw std::runtime_error(fmt::format("write to '{}' failed", tmp));
  }
  std::filesystem::rename(tmp, target);
}

ExperimentReport monte_carlo(const ExperimentSpec& spec) {
  spec.validate();
  const ProtocolParams params = make_params(spec.profile, spec.n);
  if (static_cast<double>(spec.f) > spec.n / params.c_f)
    fmt::print(stderr, "warning: f = {} exceeds n / c_f = {:.1f} for profile {}\n", spec.f,
               spec.n / params.c_f, spec.profile);
  const std::uint64_t budget =
      spec.max_exchanges ? spec.max_exchanges : default_max_exchanges(spec.protocol, params);
  const Population initial = build_initial(spec.n, spec.a, spec.b, spec.f);

  ExperimentReport report;
  report.spec = spec;
  report.runs.resize(spec.trials);
  parallel_for(spec.trials, spec.threads, [&](std::uint32_t i) {
    auto strategy = make_strategy(spec.adversary, spec.adversary_target);
    RunOptions options;
    options.trace = spec.trace;
    options.check_invariants = spec.check_invariants;
    if (spec.trace != TraceMode::Off && !spec.trace_dir.empty())
      options.trace_path = fmt::format("{}/trial-{}.trace", spec.trace_dir, i);
    report.runs[i] = run(spec.protocol, params, initial, *strategy,
                         trial_seed(spec.master_seed, i), budget, options);
  });
  report.stats = summarize(report.runs, expected_majority(spec.a, spec.b));

  if (!spec.output.empty()) {
    std::string csv = csv_header() + "\n";
    for (std::uint32_t i = 0; i < spec.trials; ++i) csv += csv_row(i, report.runs[i]) + "\n";
    write_file_atomically(spec.output, csv);
  }
  if (!spec.summary_output.empty()) write_file_atomically(spec.summary_output, summary_json(report));
  return report;
}

std::string sweep_csv_header() {
  return "protocol,profile,n,a,b,f,adversary,trials,correct,minority,failed,budget,mixed,"
         "success_rate,wilson_low,wilson_high,mean_parallel_time,median_parallel_time,"
         "mean_drift_max,error";
}

std::string sweep_csv_row(const SweepRow& row) {
  const ExperimentSpec& s = row.spec;
  const ExperimentStats& t = row.stats;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},"
                     "{:.3f},{}",
                     to_string(s.protocol), s.profile, s.n, s.a, s.b, s.f, s.adversary, t.trials,
                     t.correct_count, t.minority_count, t.failed_count, t.budget_count,
                     t.mixed_count, t.success_rate, t.interval.low, t.interval.high,
                     t.mean_parallel_time, t.median_parallel_time, t.mean_drift_max, row.error);
}

std::vector<SweepRow> sweep(const std::string& grid_json, const ExperimentSpec& base) {
  json grid;
  try {
    grid = json::parse(grid_json);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("sweep grid is not valid JSON: {}", e.what()));
  }
  if (!grid.is_object() || grid.empty()) throw ConfigError("sweep grid must be a non-empty object");
  static const std::vector<std::string> keys = {"protocol", "profile", "adversary", "n",
                                                "f",        "d",       "a"};
  std::vector<std::pair<std::string, json>> dims;
  for (const auto& [key, values] : grid.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(fmt::format("unknown sweep dimension '{}'", key));
    if (!values.is_array() || values.empty())
      throw ConfigError(fmt::format("sweep dimension '{}' must be a non-empty array", key));
  }
  for (const std::string& key : keys)
    if (grid.contains(key)) dims.emplace_back(key, grid[key]);
  if (grid.contains("d") && grid.contains("a"))
    throw ConfigError("sweep grid cannot vary both 'd' and 'a'");

  const Value majority = expected_majority(base.a, base.b);
  const std::uint32_t base_gap = base.a > base.b ? base.a - base.b : base.b - base.a;
  std::size_t cells = 1;
  for (const auto& d : dims) cells *= d.second.size();

  std::vector<SweepRow> rows;
  std::string csv = sweep_csv_header() + "\n";
  for (std::size_t cell = 0; cell < cells; ++cell) {
    SweepRow row;
    row.spec = base;
    row.spec.output.clear();
    row.spec.summary_output.clear();
    std::optional<std::uint32_t> gap;
    std::optional<std::uint32_t> a;
    try {
      std::size_t rest = cell;
      for (auto it = dims.rbegin(); it != dims.rend(); ++it) {
        const json& v = it->second[rest % it->second.size()];
        rest /= it->second.size();
        const std::string& key = it->first;
        if (key == "protocol") {
          auto p = parse_protocol(v.get<std::string>());
          if (!p) throw ConfigError(fmt::format("unknown protocol '{}'", v.get<std::string>()));
          row.spec.protocol = *p;
        } else if (key == "profile") {
          row.spec.profile = v.get<std::string>();
        } else if (key == "adversary") {
          row.spec.adversary = v.get<std::string>();
        } else if (key == "n") {
          row.spec.n = v.get<std::uint32_t>();
        } else if (key == "f") {
          row.spec.f = v.get<std::uint32_t>();
        } else if (key == "d") {
          gap = v.get<std::uint32_t>();
        } else {
          a = v.get<std::uint32_t>();
        }
      }
      if (a) {
        if (*a > row.spec.n) throw ConfigError(fmt::format("a = {} exceeds n", *a));
        row.spec.a = *a;
        row.spec.b = row.spec.n - *a;
      } else {
        set_gap(row.spec, gap.value_or(base_gap), majority);
      }
      row.stats = monte_carlo(row.spec).stats;
    } catch (const json::exception& e) {
      row.error = fmt::format("bad grid value: {}", e.what());
    } catch (const ConfigError& e) {
      row.error = e.what();
    }
    if (!row.error.empty()) fmt::print(stderr, "warning: skipping sweep cell {}: {}\n", cell, row.error);
    csv += sweep_csv_row(row) + "\n";
    rows.push_back(std::move(row));
  }
  if (!base.output.empty()) write_file_atomically(base.output, csv);
  return rows;
}

DriftReport validate_drift(std::uint32_t n, double drift_c, std::uint32_t trials,
                           std::uint64_t master_seed) {
  if (n < 2) throw ConfigError(fmt::format("drift check needs n >= 2, got {}", n));
  if (!(drift_c > 0)) throw ConfigError("drift_c must be positive");
  DriftReport rep;
  rep.n = n;
  rep.drift_c = drift_c;
  rep.trials = trials;
  const double ln = std::log(static_cast<double>(n));
  rep.exchanges_per_trial = static_cast<std::uint64_t>(std::ceil(drift_c * n * ln * ln * ln));
  rep.bound = 2.0 * std::sqrt(12.0 * drift_c) * ln * ln;
  rep.theory_fraction = std::max(0.0, 1.0 - 2.0 / n);
  if (trials == 0) return rep;
  std::vector<std::uint64_t> count(n);
  for (std::uint32_t t = 0; t < trials; ++t) {
    Rng rng(stream_seed(trial_seed(master_seed, t), Stream::Scheduler));
    std::fill(count.begin(), count.end(), 0);
    std::uint64_t gap = 0;
    auto sample = [&] {
      const auto [lo, hi] = std::minmax_element(count.begin(), count.end());
      gap = std::max(gap, *hi - *lo);
    };
    for (std::uint64_t i = 1; i <= rep.exchanges_per_trial; ++i) {
      const ExchangePair p = next_pair_unchecked(rng, n);
      ++count[p.u];
      ++count[p.v];
      if (i % n == 0) sample();
    }
    sample();
    rep.worst_gap = std::max(rep.worst_gap, gap);
    if (static_cast<double>(gap) < rep.bound) ++rep.passes;
  }
  rep.pass_fraction = static_cast<double>(rep.passes) / trials;
  return rep;
}

TalliesReport validate_phase_tallies(const ExperimentSpec& spec) {
  const ExperimentReport mc = monte_carlo(spec);
  TalliesReport rep;
  rep.stats = mc.stats;
  const double n = spec.n;
  const double f = spec.f;
  const double slack = std::sqrt(n * std::log(n));
  const double allowance = 2.0 / n;

  EnvelopeCheck cancel{"acpd-cancellations"};
  EnvelopeCheck conserve{"scfd-conservation"};
  EnvelopeCheck balance{"scfd-paired-cancellations"};
  EnvelopeCheck dup{"duplication-growth"};
  cancel.theory_fraction = conserve.theory_fraction = dup.theory_fraction = allowance;
  conserve.exact = balance.exact = true;
  const bool scfd =
      spec.protocol == Protocol::Scfd || spec.protocol == Protocol::ScfdTerminationFirst;

  auto observe = [](EnvelopeCheck& c, double value, double low, double high) {
    ++c.observations;
    if (value < low || value > high) ++c.violations;
    c.measured_mean += value;
    c.envelope_low += low;
    c.envelope_high += high;
  };

  for (const RunResult& r : mc.runs) {
    const std::uint32_t honest = r.n - r.f;
    if (scfd && spec.f == 0) observe(balance, static_cast<double>(r.cancellation_imbalance), 0, 0);
    for (std::size_t k = 0; k + 1 < r.per_phase.size(); ++k) {
      const PhaseStats& cur = r.per_phase[k];
      const PhaseStats& nxt = r.per_phase[k + 1];
      if (cur.entered != honest || nxt.entered != honest) continue;
      const double a = cur.entry_a;
      const double b = cur.entry_b;
      const double diff = a - b;
      const double next_diff = static_cast<double>(nxt.entry_a) - nxt.entry_b;
      if (cur.kind == PhaseKind::Cancellation) {
        // Phase 0 has no entry snapshot to cancel against.
        if (spec.protocol == Protocol::Acpd && k > 0) {
          const double mean = a * b / n;
          observe(cancel, cur.cancelled_a, mean - std::sqrt(2.0) * slack - f,
                  mean + std::sqrt(3.0) * slack + f);
        }
        if (scfd && spec.f == 0) observe(conserve, next_diff, diff, diff);
      } else if (cur.kind == PhaseKind::Duplication) {
        const double e = cur.entry_empty;
        const double low = std::abs(diff) * (1.0 + e / n) - f - 4.0 * slack;
        observe(dup, std::abs(next_diff), low, n);
      }
    }
  }
  for (EnvelopeCheck* c : {&cancel, &conserve, &balance, &dup}) {
    if (c->observations == 0) continue;
    const double k = static_cast<double>(c->observations);
    c->violation_fraction = c->violations / k;
    c->measured_mean /= k;
    c->envelope_low /= k;
    c->envelope_high /= k;
    if (c->exact)
      c->passed = c->violations == 0;
    else
      c->passed = c->measured_mean >= c->envelope_low && c->measured_mean <= c->envelope_high &&
                  c->violation_fraction <= 0.05;
    rep.passed = rep.passed && c->passed;
    rep.checks.push_back(*c);
  }
  return rep;
}

ChiSquaredReport validate_scheduler(std::uint32_t n, std::uint64_t draws, std::uint64_t seed) {
  if (n < 2) throw ConfigError(fmt::format("scheduler check needs n >= 2, got {}", n));
  if (n > 2000) throw ConfigError("scheduler check supports n <= 2000");
  ChiSquaredReport rep;
  rep.n = n;
  rep.draws = draws;
  const std::uint64_t cells = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::uint64_t> hits(cells, 0);
  std::vector<std::uint64_t> member(n, 0);
  Rng rng(seed);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const ExchangePair p = next_pair(rng, n);
    ++hits[pair_index(p, n)];
    ++member[p.u];
    ++member[p.v];
  }
  if (draws == 0 || cells < 2) return rep;
  const double expected = static_cast<double>(draws) / cells;
  for (std::uint64_t h : hits) rep.statistic += (h - expected) * (h - expected) / expected;
  rep.degrees_of_freedom = cells - 1;
  rep.p_value = boost::math::gamma_q(rep.degrees_of_freedom / 2.0, rep.statistic / 2.0);
  const double p = 2.0 / n;
  const double mean = draws * p;
  const double sd = std::sqrt(draws * p * (1.0 - p));
  for (std::uint64_t m : member)
    rep.worst_inclusion_z = std::max(rep.worst_inclusion_z, std::abs((m - mean) / sd));
  rep.passed = rep.p_value > 1e-3 && rep.worst_inclusion_z <= 3.0;
  return rep;
}

CoinReport validate_coin(std::uint32_t n, double bias_c, std::uint64_t draws, std::uint64_t seed) {
  CoinReport rep;
  rep.n = n;
  rep.bias_c = bias_c;
  rep.rounds = coin_rounds_for(n, bias_c);
  rep.draws = draws;
  rep.expected = std::ldexp(1.0, -static_cast<int>(rep.rounds));
  CoinTape tape(seed);
  for (std::uint64_t i = 0; i < draws; ++i) {
    std::uint32_t deepest = 0;
    rep.ones += static_cast<std::uint64_t>(biased_coin(tape, rep.rounds, &deepest));
    rep.deepest = std::max(rep.deepest, deepest);
  }
  const double var = draws * rep.expected * (1.0 - rep.expected);
  const double dev = static_cast<double>(rep.ones) - draws * rep.expected;
  rep.z = var > 0 ? dev / std::sqrt(var) : (dev == 0 ? 0.0 : INFINITY);
  rep.passed = std::abs(rep.z) <= 3.0 && rep.deepest <= rep.rounds;
  return rep;
}

CaptureReport first_dual_capture(std::uint32_t n, std::uint32_t trials,
                                 std::uint64_t master_seed) {
  CaptureReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.threshold = n / 264.0;
  if (trials == 0) return rep;
  const ProtocolParams params = make_params("desk", n);
  const Population initial = build_initial(n, n - n / 2, n / 2, n);
  double total = 0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    WeakFirstDual strategy(Value::B);
    Simulation<ScfdMachine> sim(ScfdMachine{PhaseSchedule::ScfdCycle, &params}, params, initial,
                                strategy, trial_seed(master_seed, t));
    sim.run(n / 8);
    total += strategy.captured_pairs();
    if (strategy.captured_pairs() > rep.threshold) ++rep.above;
  }
  rep.fraction_above = static_cast<double>(rep.above) / trials;
  rep.mean_captured = total / trials;
  return rep;
}

namespace {

LowerBoundReport lower_bound(std::string scenario, ExperimentSpec attacked, ExperimentSpec control) {
  LowerBoundReport rep;
  rep.scenario = std::move(scenario);
  rep.attacked = monte_carlo(attacked).stats;
  rep.control = monte_carlo(control).stats;
  rep.minority_rate = static_cast<double>(rep.attacked.minority_count) / rep.attacked.trials;
  rep.control_success = rep.control.success_rate;
  rep.reproduced = rep.minority_rate >= 0.8 * rep.control_success;
  return rep;
}

}  // namespace

LowerBoundReport demo_static_flip(std::uint32_t n, std::uint32_t a, std::uint32_t b,
                                  std::uint32_t f, std::uint32_t control_a,
                                  std::uint32_t control_b, std::uint32_t trials,
                                  Protocol protocol, std::uint64_t master_seed) {
  ExperimentSpec attacked;
  attacked.protocol = protocol;
  attacked.n = n;
  attacked.a = a;
  attacked.b = b;
  attacked.f = f;
  attacked.adversary = "static-flip";
  attacked.trials = trials;
  attacked.master_seed = master_seed;
  ExperimentSpec control = attacked;
  control.n = control_a + control_b;
  control.a = control_a;
  control.b = control_b;
  control.f = 0;
  control.adversary = "none";
  return lower_bound("static-flip", attacked, control);
}

LowerBoundReport demo_first_dual(std::uint32_t n, std::uint32_t a, std::uint32_t b,
                                 std::uint32_t f, std::uint32_t trials, Protocol protocol,
                                 std::uint64_t master_seed) {
  const Value majority = expected_majority(a, b);
  ExperimentSpec attacked;
  attacked.protocol = protocol;
  attacked.n = n;
  attacked.a = a;
  attacked.b = b;
  attacked.f = f;
  attacked.adversary = "weak-first-dual";
  attacked.adversary_target = opposite(majority);
  attacked.trials = trials;
  attacked.master_seed = master_seed;
  ExperimentSpec control = attacked;
  control.f = 0;
  control.adversary = "none";
  control.adversary_target.reset();
  const std::uint32_t moved = std::min(f, majority == Value::A ? a : b);
  if (majority == Value::A) {
    control.a = a - moved;
    control.b = b + moved;
  } else {
    control.b = b - moved;
    control.a = a + moved;
  }
  return lower_bound("weak-first-dual", attacked, control);
}

}  // namespace bpp
