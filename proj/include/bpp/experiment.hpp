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

// Monte-Carlo trials, parameter sweeps and the statistical checks run on
// top of the engine.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpp/engine.hpp"

namespace bpp {

struct ExperimentSpec {
  Protocol protocol = Protocol::Scfd;
  std::string profile = "desk";
  std::uint32_t n = 1000;
  std::uint32_t a = 1000;
  std::uint32_t b = 0;
  std::uint32_t f = 0;
  std::string adversary = "none";
  std::optional<Value> adversary_target;
  std::uint32_t trials = 1;
  std::uint64_t master_seed = 1;
  std::uint64_t max_exchanges = 0;  // 0 picks default_max_exchanges()
  std::string output;               // per-trial CSV; empty writes nothing
  std::string summary_output;       // JSON summary; empty writes nothing
  std::vector<std::string> validations;
  unsigned threads = 0;             // 0 uses the hardware concurrency
  bool check_invariants = false;
  TraceMode trace = TraceMode::Off;
  std::string trace_dir;            // per-trial trace files go here

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Sets a and b for a gap d in favour of the majority value. When n - d
/// is odd the gap grows by one.
void set_gap(ExperimentSpec& spec, std::uint32_t d, Value majority);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval for k successes in n trials.
WilsonInterval wilson_interval(std::uint32_t k, std::uint32_t n, double z = 1.959963984540054);

struct ExperimentStats {
  std::uint32_t trials = 0;
  std::uint32_t correct_count = 0;   // decided the initial honest majority
  std::uint32_t minority_count = 0;  // decided the initial minority
  std::uint32_t failed_count = 0;
  std::uint32_t budget_count = 0;
  std::uint32_t mixed_count = 0;
  double success_rate = 0.0;
  WilsonInterval interval;
  double mean_parallel_time = 0.0;
  double median_parallel_time = 0.0;
  double mean_drift_max = 0.0;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<RunResult> runs;  // ordered by trial index
  ExperimentStats stats;
};

/// The value that counts as correct: the larger of a and b (A on a tie).
Value expected_majority(std::uint32_t a, std::uint32_t b) noexcept;

ExperimentStats summarize(const std::vector<RunResult>& runs, Value majority);

/// Runs spec.trials independent runs, seeded by trial_seed(master_seed, i),
/// in parallel. Writes the CSV and JSON outputs named in the spec.
ExperimentReport monte_carlo(const ExperimentSpec& spec);

/// Column order of the per-trial CSV.
std::string csv_header();
std::string csv_row(std::uint32_t trial, const RunResult& r);
std::string summary_json(const ExperimentReport& report);

/// Writes via a temporary file and rename.
void write_file_atomically(const std::string& path, const std::string& content);

/// One grid cell of a sweep.
struct SweepRow {
  ExperimentSpec spec;
  ExperimentStats stats;
  std::string error;  // non-empty when the cell was skipped
};

/// Cartesian product over the JSON grid's arrays ("n", "f", "d", "a",
/// "protocol", "adversary", "profile"), each cell overriding the base spec.
/// Throws ConfigError on an empty grid or empty dimension; invalid cells
/// are reported in SweepRow::error and skipped. Streams rows to
/// base.output when set.
std::vector<SweepRow> sweep(const std::string& grid_json, const ExperimentSpec& base);
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

struct DriftReport {
  std::uint32_t n = 0;
  double drift_c = 0.0;
  std::uint32_t trials = 0;
  std::uint64_t exchanges_per_trial = 0;
  double bound = 0.0;  // 2 zeta
  std::uint32_t passes = 0;
  double pass_fraction = 1.0;
  double theory_fraction = 1.0;  // 1 - 2/n
  std::uint64_t worst_gap = 0;
};

/// Pure-scheduler trials of ceil(drift_c n ln^3 n) exchanges each; a trial
/// passes when the largest lifetime-counter gap stays below 2 zeta.
DriftReport validate_drift(std::uint32_t n, double drift_c, std::uint32_t trials,
                           std::uint64_t master_seed = 1);

/// One envelope check summed over trials and phases.
struct EnvelopeCheck {
  std::string name;
  std::uint64_t observations = 0;
  std::uint64_t violations = 0;
  double violation_fraction = 0.0;
  double theory_fraction = 0.0;  // the allowance the bound comes with
  double measured_mean = 0.0;    // mean of the checked quantity
  double envelope_low = 0.0;     // mean of the lower envelope
  double envelope_high = 0.0;    // mean of the upper envelope
  bool exact = false;            // any violation fails the check
  bool passed = true;
};

struct TalliesReport {
  ExperimentStats stats;
  std::vector<EnvelopeCheck> checks;
  bool passed = true;
};

/// Phase-by-phase checks on completed phases: cancellation counts against
/// [ab/n - sqrt(2 n ln n), ab/n + sqrt(3 n ln n)] (ACPD), exact a - b
/// conservation across cancellation phases (SCFD), and the duplication
/// growth envelope.
TalliesReport validate_phase_tallies(const ExperimentSpec& spec);

struct ChiSquaredReport {
  std::uint32_t n = 0;
  std::uint64_t draws = 0;
  double statistic = 0.0;
  std::uint64_t degrees_of_freedom = 0;
  double p_value = 1.0;
  double worst_inclusion_z = 0.0;  // per-node inclusion, in standard deviations
  bool passed = true;              // p > 1e-3 and every |z| <= 3
};

ChiSquaredReport validate_scheduler(std::uint32_t n, std::uint64_t draws, std::uint64_t seed);

struct CoinReport {
  std::uint32_t n = 0;
  double bias_c = 0.0;
  std::uint32_t rounds = 0;
  std::uint64_t draws = 0;
  std::uint64_t ones = 0;
  double expected = 0.0;  // 2^-L
  double z = 0.0;
  std::uint32_t deepest = 0;
  bool passed = true;  // |z| <= 3 and deepest <= L
};

CoinReport validate_coin(std::uint32_t n, double bias_c, std::uint64_t draws, std::uint64_t seed);

/// Captures of the weak first-dual adversary within the first n/8
/// exchanges of a balanced population.
struct CaptureReport {
  std::uint32_t n = 0;
  std::uint32_t trials = 0;
  double threshold = 0.0;  // n / 264
  std::uint32_t above = 0;
  double fraction_above = 0.0;
  double mean_captured = 0.0;
};

CaptureReport first_dual_capture(std::uint32_t n, std::uint32_t trials,
                                 std::uint64_t master_seed = 1);

struct LowerBoundReport {
  std::string scenario;
  ExperimentStats attacked;
  ExperimentStats control;
  double minority_rate = 0.0;
  double control_success = 0.0;
  bool reproduced = false;  // minority_rate >= 0.8 x control_success
};

/// Static flip with d < 2f, against a fault-free control run at the
/// tallies (control_a, control_b) whose majority is the attacked minority.
LowerBoundReport demo_static_flip(std::uint32_t n, std::uint32_t a, std::uint32_t b,
                                  std::uint32_t f, std::uint32_t control_a,
                                  std::uint32_t control_b, std::uint32_t trials,
                                  Protocol protocol, std::uint64_t master_seed = 1);

/// Weak first-dual with d < 2(f - 1) against a control at the tallies the
/// captures produce on average.
LowerBoundReport demo_first_dual(std::uint32_t n, std::uint32_t a, std::uint32_t b,
                                 std::uint32_t f, std::uint32_t trials, Protocol protocol,
                                 std::uint64_t master_seed = 1);

}  // namespace bpp
