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

// Acceptance run: one PASS/FAIL line per criterion. Exits 0 once every
// criterion has been evaluated; --strict turns any FAIL into exit 1.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bpp/combined.hpp"
#include "bpp/experiment.hpp"

namespace {

using namespace bpp;
namespace fs = std::filesystem;

struct Verdict {
  Verdict(int i, std::string t) : id(i), title(std::move(t)) {}
  int id;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

class Acceptance {
 public:
  Acceptance(fs::path out, std::uint64_t seed) : out_(std::move(out)), seed_(seed) {
    fs::create_directories(out_);
  }

  std::vector<Verdict> run_all() {
    std::vector<Verdict> v;
    v.push_back(unanimous());
    v.push_back(small_gap());
    v.push_back(large_gap());
    v.push_back(byzantine());
    v.push_back(static_flip());
    v.push_back(drift());
    v.push_back(statistics());
    v.push_back(combined());
    v.push_back(replay());
    v.push_back(scaling());
    // last, once every f = 0 SCFD run has been checked
    v.push_back(conservation());
    std::sort(v.begin(), v.end(), [](const Verdict& x, const Verdict& y) { return x.id < y.id; });
    return v;
  }

 private:
  fs::path out_;
  std::uint64_t seed_;
  EnvelopeCheck conserve_{"scfd-conservation"};
  EnvelopeCheck balance_{"scfd-paired-cancellations"};
  std::vector<std::string> conserve_sources_;
  std::vector<ExperimentSpec> replayable_;
  double small_gap_time_ = 0.0;

  ExperimentSpec spec(Protocol p, std::uint32_t n, std::uint32_t trials, const std::string& tag) {
    ExperimentSpec s;
    s.protocol = p;
    s.n = n;
    s.a = n;
    s.b = 0;
    s.trials = trials;
    s.master_seed = seed_;
    s.output = (out_ / (tag + ".csv")).string();
    return s;
  }

  static bool is_scfd(Protocol p) {
    return p == Protocol::Scfd || p == Protocol::ScfdTerminationFirst;
  }

  // f = 0 SCFD runs go through the tally checker so conservation is
  // asserted on every one of them.
  ExperimentStats execute(const ExperimentSpec& s, std::vector<RunResult>* runs = nullptr) {
    if (is_scfd(s.protocol) && s.f == 0 && runs == nullptr) {
      const TalliesReport t = validate_phase_tallies(s);
      for (const EnvelopeCheck& c : t.checks) {
        EnvelopeCheck* into = c.name == conserve_.name   ? &conserve_
                              : c.name == balance_.name ? &balance_
                                                        : nullptr;
        if (!into) continue;
        into->observations += c.observations;
        into->violations += c.violations;
      }
      conserve_sources_.push_back(fs::path(s.output).stem().string());
      return t.stats;
    }
    ExperimentReport r = monte_carlo(s);
    if (runs) *runs = std::move(r.runs);
    return r.stats;
  }

  static std::string describe(const ExperimentStats& s) {
    return fmt::format(
        "{} trials: correct {} minority {} failed {} budget {} mixed {}, success {:.3f} "
        "[{:.3f}, {:.3f}], mean time {:.0f}",
        s.trials, s.correct_count, s.minority_count, s.failed_count, s.budget_count,
        s.mixed_count, s.success_rate, s.interval.low, s.interval.high, s.mean_parallel_time);
  }

  static double ln3(double n) { return std::pow(std::log(n), 3); }

  Verdict unanimous() {
    Verdict v{1, "unanimous correctness"};
    v.pass = true;
    const auto start = std::chrono::steady_clock::now();
    for (Protocol p : {Protocol::Acpd, Protocol::Scfd, Protocol::ScfdTerminationFirst,
                       Protocol::Combined}) {
      const std::string name(to_string(p));
      ExperimentSpec s = spec(p, 1000, 50, "c1-" + name);
      const ExperimentStats st = execute(s);
      const bool ok = st.correct_count == 50 && st.mixed_count == 0 && st.failed_count == 0;
      v.pass = v.pass && ok;
      v.details.push_back(fmt::format("{}: {}", name, describe(st)));
      replayable_.push_back(s);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.pass = v.pass && secs <= 120.0;
    v.details.push_back(fmt::format("wall time {:.1f} s (limit 120 s)", secs));
    return v;
  }

  Verdict small_gap() {
    Verdict v{2, "SCFD small-gap majority"};
    ExperimentSpec s = spec(Protocol::Scfd, 1000, 200, "c2-scfd-d2");
    set_gap(s, 2, Value::A);
    const ExperimentStats st = execute(s);
    small_gap_time_ = st.mean_parallel_time;
    const double bound = 20.0 * ln3(1000);
    v.pass = st.success_rate >= 0.90 && st.mean_parallel_time <= bound;
    v.details.push_back(describe(st));
    v.details.push_back(fmt::format("time bound 20 ln^3 n = {:.0f}", bound));
    return v;
  }

  Verdict large_gap() {
    Verdict v{3, "ACPD large-gap majority"};
    const double n = 2000;
    const auto d = static_cast<std::uint32_t>(std::ceil(4 * std::sqrt(n * std::log(n))));
    ExperimentSpec s = spec(Protocol::Acpd, 2000, 200, "c3-acpd");
    set_gap(s, d, Value::A);
    const ExperimentStats st = execute(s);
    v.pass = st.success_rate >= 0.90;
    v.details.push_back(fmt::format("a = {}, b = {}: {}", s.a, s.b, describe(st)));
    return v;
  }

  Verdict byzantine() {
    Verdict v{4, "Byzantine resilience (full dynamic booster)"};
    v.pass = true;
    const double n = 2000;
    const std::uint32_t f = 20;
    const auto d = static_cast<std::uint32_t>(std::ceil(f + 4 * std::sqrt(n * std::log(n))));
    for (Protocol p : {Protocol::Acpd, Protocol::Scfd}) {
      const std::string name(to_string(p));
      ExperimentSpec s = spec(p, 2000, 200, "c4-" + name);
      set_gap(s, d, Value::A);
      s.f = f;
      s.adversary = "full-booster";
      const ExperimentStats st = execute(s);
      const bool ok = st.success_rate >= 0.85 && st.mixed_count == 0;
      v.pass = v.pass && ok;
      v.details.push_back(fmt::format("{} {} (a = {}, b = {}): {}", ok ? "PASS" : "FAIL", name,
                                      s.a, s.b, describe(st)));
      if (p == Protocol::Acpd) {
        ExperimentSpec head = s;
        head.trials = 25;
        replayable_.push_back(head);
      }
    }
    return v;
  }

  Verdict static_flip() {
    Verdict v{5, "lower-bound demo (full static flip)"};
    const LowerBoundReport r =
        demo_static_flip(1000, 505, 495, 10, 495, 515, 200, Protocol::Scfd, seed_);
    v.pass = r.reproduced;
    v.details.push_back("attacked " + describe(r.attacked));
    v.details.push_back("control " + describe(r.control));
    v.details.push_back(fmt::format("minority rate {:.3f} vs 0.8 x control success {:.3f}",
                                    r.minority_rate, 0.8 * r.control_success));
    return v;
  }

  Verdict drift() {
    Verdict v{6, "drift validation"};
    const DriftReport r = validate_drift(1000, 1.0, 100, seed_);
    v.pass = r.pass_fraction >= 0.96;
    v.details.push_back(fmt::format(
        "{} trials of {} exchanges: pass fraction {:.2f} (need 0.96), bound 2 zeta = {:.1f}, "
        "worst gap {}",
        r.trials, r.exchanges_per_trial, r.pass_fraction, r.bound, r.worst_gap));
    return v;
  }

  Verdict conservation() {
    Verdict v{7, "conservation oracle"};
    v.pass = conserve_.observations > 0 && conserve_.violations == 0 && balance_.violations == 0;
    std::string runs;
    for (const auto& s : conserve_sources_) runs += (runs.empty() ? "" : ", ") + s;
    v.details.push_back(fmt::format("runs checked: {}", runs));
    v.details.push_back(fmt::format("cancellation phases {} with a - b changed: {}",
                                    conserve_.observations, conserve_.violations));
    v.details.push_back(fmt::format("runs with unpaired cancellations: {} of {}",
                                    balance_.violations, balance_.observations));
    return v;
  }

  Verdict statistics() {
    Verdict v{8, "scheduler and coin statistics"};
    const ChiSquaredReport chi = validate_scheduler(20, 1'000'000, seed_);
    const CoinReport coin = validate_coin(1024, 1.0, 1'000'000, seed_);
    const bool coin_ok = std::abs(coin.z) <= 3.0 && coin.expected == 1.0 / 128;
    v.pass = chi.p_value > 1e-3 && coin_ok;
    v.details.push_back(fmt::format("pairs n = 20: chi2 {:.1f} on {} dof, p = {:.4f}",
                                    chi.statistic, chi.degrees_of_freedom, chi.p_value));
    v.details.push_back(fmt::format("coin L = {}: {} ones of {} (expected {:.6f}), z = {:.2f}",
                                    coin.rounds, coin.ones, coin.draws, coin.expected, coin.z));
    return v;
  }

  Verdict combined() {
    Verdict v{9, "combined decision logic"};
    using enum Value;
    const std::array<Value, 3> no_y{B, Empty, Empty};
    const bool examples = combined_decide(1, {A, B, B}, no_y) == A &&
                          combined_decide(0, {A, A, A}, no_y) == A &&
                          combined_decide(0, {A, A, B}, no_y) == B;
    v.details.push_back(fmt::format("decision examples {}", examples ? "reproduce" : "differ"));

    const double n = 1000;
    const auto d = static_cast<std::uint32_t>(std::ceil(6 * std::sqrt(n * std::log(n))));
    ExperimentSpec large = spec(Protocol::Combined, 1000, 100, "c9-combined-large");
    set_gap(large, d, A);
    std::vector<RunResult> runs;
    const ExperimentStats ls = execute(large, &runs);
    std::uint32_t x_path = 0;
    for (const RunResult& r : runs) {
      if (r.outcome == Outcome::DecidedA && r.combined.x_path > r.combined.y_path) ++x_path;
    }
    v.details.push_back(fmt::format("d = {}: {} of {} decided the majority via X1 ({})", large.a - large.b,
                                    x_path, ls.trials, describe(ls)));

    ExperimentSpec small = spec(Protocol::Combined, 1000, 100, "c9-combined-d2");
    set_gap(small, 2, A);
    const ExperimentStats ss = execute(small);
    v.details.push_back(fmt::format("d = 2: {}", describe(ss)));
    v.pass = examples && x_path >= 85 && ss.correct_count >= 80;
    return v;
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Re-executed runs must match the first execution byte for byte, or the
  // leading rows of it when only the first trials are replayed.
  Verdict replay() {
    Verdict v{10, "replay determinism"};
    v.pass = true;
    for (ExperimentSpec s : replayable_) {
      const std::string first = slurp(s.output);
      const fs::path stem = fs::path(s.output).stem();
      s.output = (out_ / (stem.string() + "-replay.csv")).string();
      monte_carlo(s);
      const std::string second = slurp(s.output);
      const bool same = !second.empty() && first.compare(0, second.size(), second) == 0;
      v.pass = v.pass && same;
      v.details.push_back(fmt::format("{} ({} trials): {}", stem.string(), s.trials,
                                      same ? "byte-identical" : "DIFFERS"));
    }
    return v;
  }

  Verdict scaling() {
    Verdict v{11, "time scaling"};
    std::vector<std::pair<double, double>> points;  // n, mean parallel time
    for (std::uint32_t n : {500u, 1000u, 2000u}) {
      double t = small_gap_time_;
      if (n != 1000) {
        ExperimentSpec s = spec(Protocol::Scfd, n, 200, fmt::format("c11-scfd-n{}", n));
        set_gap(s, 2, Value::A);
        const ExperimentStats st = execute(s);
        t = st.mean_parallel_time;
        v.details.push_back(fmt::format("n = {}: {}", n, describe(st)));
      }
      points.emplace_back(n, t);
    }
    double num = 0.0, den = 0.0;
    for (auto [n, t] : points) {
      num += t * ln3(n);
      den += ln3(n) * ln3(n);
    }
    const double c = num / den;
    v.pass = true;
    std::string ratios;
    for (auto [n, t] : points) {
      const double ratio = t / (c * ln3(n));
      v.pass = v.pass && ratio >= 0.5 && ratio <= 2.0;
      ratios += fmt::format(" n={}: {:.0f} ({:.2f})", n, t, ratio);
    }
    v.details.push_back(fmt::format("fitted c = {:.2f}; time (ratio to c ln^3 n):{}", c, ratios));
    return v;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string out = "acceptance";
  std::uint64_t seed = 1;
  bool strict = false;
  app.add_option("--out", out, "directory for the per-criterion CSV files and report");
  app.add_option("--seed", seed, "master seed of every run");
  app.add_flag("--strict", strict, "exit 1 when any criterion fails");
  CLI11_PARSE(app, argc, argv);

  try {
    Acceptance acceptance(out, seed);
    const std::vector<Verdict> verdicts = acceptance.run_all();
    std::ostringstream report;
    int failed = 0;
    for (const Verdict& v : verdicts) {
      failed += !v.pass;
      report << fmt::format("{} criterion {:>2}: {}\n", v.pass ? "PASS" : "FAIL", v.id, v.title);
      for (const auto& d : v.details) report << "      " << d << '\n';
    }
    report << fmt::format("{} of {} criteria pass\n", verdicts.size() - failed, verdicts.size());
    std::cout << report.str();
    write_file_atomically((fs::path(out) / "report.txt").string(), report.str());
    return strict && failed > 0 ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << '\n';
    return 2;
  }
}
