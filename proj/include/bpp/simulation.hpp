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

// The serialized run loop over one protocol machine. run() in engine.hpp
// is the usual entry point; tests drive Simulation directly to force
// exchanges and inspect states.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <type_traits>
#include <vector>

#include <fmt/format.h>

#include "bpp/engine.hpp"
#include "bpp/machines.hpp"

namespace bpp {

template <class M>
class Simulation final : private StateOracle {
 public:
  using State = typename M::State;
  using View = typename M::View;

  Simulation(M machine, const ProtocolParams& params, const Population& initial,
             Strategy& strategy, std::uint64_t seed, const RunOptions& options = {})
      : m_(machine),
        params_(params),
        strategy_(strategy),
        options_(options),
        seed_(seed),
        n_(initial.size()),
        fault_bound_(initial.fault_bound()),
        budget_(initial.corruption_budget()),
        lifetime_(initial.size(), 0) {
    if (n_ < 2) throw ConfigError(fmt::format("population size {} is below 2", n_));
    sched_.seed(stream_seed(seed, Stream::Scheduler));
    strategy_.seed(stream_seed(seed, Stream::Adversary));
    const std::uint64_t coin_base = stream_seed(seed, Stream::NodeCoins);
    states_.reserve(n_);
    role_.assign(n_, kHonest);
    for (NodeId i = 0; i < n_; ++i) {
      states_.push_back(m_.initial(initial[i].value, mix64(coin_base + i)));
      if (initial.is_faulty(i)) {
        role_[i] = kMimic;
        ++faulty_;
      } else {
        count(states_[i], +1);
      }
    }
    if constexpr (M::kTracksPhases) {
      PhaseStats& p0 = phase_stats(0, phase_kind(0, m_.schedule, params_.gamma));
      for (NodeId i = 0; i < n_; ++i)
        if (role_[i] == kHonest) enter(p0, M::preference(states_[i]));
    }
    switch (strategy_.adversary_class()) {
      case AdversaryClass::FullStatic:
        apply(strategy_.corrupt_at_start(FullView{{0, {}, budget_}, this}));
        break;
      case AdversaryClass::WeakStatic:
        apply(strategy_.corrupt_at_start(StartView{n_, budget_}));
        break;
      default:
        break;
    }
  }

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// All honest nodes decided, or one failed.
  bool finished() const noexcept { return undecided_ == 0 || failed_ > 0; }

  /// One scheduled exchange, with the adversary hooks of its class.
  void step() {
    const ExchangePair p = next_pair_unchecked(sched_, n_);
    if (strategy_.adversary_class() == AdversaryClass::FullDynamic)
      apply(strategy_.corrupt_before(FullView{{index_ + 1, p, budget_}, this}));
    exchange(p);
    switch (strategy_.adversary_class()) {
      case AdversaryClass::WeakDynamic:
        apply(strategy_.corrupt_after(
            ResultView{{index_, p, budget_}, summary(p.u), summary(p.v)}));
        break;
      case AdversaryClass::WeakContentOblivious:
        apply(strategy_.corrupt_after(PairView{index_, p, budget_}));
        break;
      default:
        break;
    }
  }

  /// Runs until finished() or max_exchanges exchanges in total.
  void run(std::uint64_t max_exchanges) {
    while (!finished() && index_ < max_exchanges) {
      step();
      if (index_ % n_ == 0) sample_drift();
    }
    sample_drift();
  }

  /// Applies the joint transition to a given pair (u != v).
  void exchange(ExchangePair p) {
    ++index_;
    const NodeId u = p.u;
    const NodeId v = p.v;
    ++lifetime_[u];
    ++lifetime_[v];
    const std::uint8_t ru = role_[u];
    const std::uint8_t rv = role_[v];
    State& su = states_[u];
    State& sv = states_[v];

    const auto fu = ru == kHonest ? M::fail_signal(su) : M::no_failure();
    const auto fv = rv == kHonest ? M::fail_signal(sv) : M::no_failure();
    State nu = su;
    State nv = sv;
    PhaseEvent eu{};
    PhaseEvent ev{};
    if (ru != kBoost) eu = m_.advance(nu, fv);
    if (rv != kBoost) ev = m_.advance(nv, fu);
    View vu{};
    View vv{};
    if (ru != kBoost) vu = m_.present(nu, fu);
    if (rv != kBoost) vv = m_.present(nv, fv);
    if (ru == kBoost && rv != kBoost) vu = M::forge(vv, strategy_.supported_value());
    if (rv == kBoost && ru != kBoost) vv = M::forge(vu, strategy_.supported_value());

    if (options_.check_invariants) check_atomic(nu, nv, vu, vv, ru, rv);
    Effect xu{};
    Effect xv{};
    if (ru != kBoost) xu = m_.act(nu, vv);
    if (rv != kBoost) xv = m_.act(nv, vu);

    if (options_.check_invariants) {
      if (ru == kHonest) check_node(u, su, nu);
      if (rv == kHonest) check_node(v, sv, nv);
    }
    if (options_.trace != TraceMode::Off) {
      ExchangeRecord r;
      r.index = index_;
      r.pair = p;
      r.u_faulty = ru != kHonest;
      r.v_faulty = rv != kHonest;
      r.view_digest = detail::digest_mix(M::digest(vu), M::digest(vv));
      r.u_before = M::preference(su);
      r.v_before = M::preference(sv);
      r.u_after = M::preference(nu);
      r.v_after = M::preference(nv);
      r.u_effect = xu.kind;
      r.v_effect = xv.kind;
      record(r);
    }

    if ((ru == kHonest) != (rv == kHonest)) ++honest_faulty_;
    int cancelled_a = 0;
    int cancelled_b = 0;
    if (ru == kHonest) settle(su, nu, eu, xu, cancelled_a, cancelled_b);
    if (rv == kHonest) settle(sv, nv, ev, xv, cancelled_a, cancelled_b);
    if (cancelled_a != cancelled_b) ++cancellation_imbalance_;
    if (ru != kBoost) su = nu;
    if (rv != kBoost) sv = nv;
  }

  RunResult result(Protocol protocol) const {
    RunResult r;
    r.protocol = protocol;
    r.profile = params_.profile_name;
    r.n = n_;
    r.f = fault_bound_;
    r.seed = seed_;
    r.exchanges_total = index_;
    r.final_tally = tally_;
    r.drift_max = drift_max_;
    r.honest_faulty_exchanges = honest_faulty_;
    r.cancellation_imbalance = cancellation_imbalance_;
    r.fault_bound_exceeded = static_cast<double>(fault_bound_) > n_ / params_.c_f;
    r.per_phase = phases_;
    const std::uint32_t honest = n_ - faulty_;
    if (tally_.decided_a > 0 && tally_.decided_b > 0) {
      r.outcome = Outcome::Mixed;
    } else if (failed_ > 0 || honest == 0) {
      r.outcome = Outcome::Failed;
    } else if (undecided_ == 0) {
      r.outcome = tally_.decided_a > 0 ? Outcome::DecidedA : Outcome::DecidedB;
    } else {
      r.outcome = Outcome::BudgetExhausted;
    }
    r.decision_exchange = decision_exchange_;
    const bool all_decided = undecided_ == 0 && honest > 0;
    r.parallel_time = static_cast<double>(all_decided ? decision_exchange_ : index_) / n_;
    if constexpr (std::is_same_v<M, CombinedMachine>) r.combined = combined_summary();
    return r;
  }

  /// Trace records kept in memory (Full: all, OnFailure: the last ring).
  std::vector<ExchangeRecord> trace() const { return {trace_.begin(), trace_.end()}; }

  const std::vector<State>& states() const noexcept { return states_; }
  /// Lifetime exchange counts per node, never wrapped.
  const std::vector<std::uint64_t>& lifetime() const noexcept { return lifetime_; }
  bool is_faulty(NodeId id) const { return role_.at(id) != kHonest; }
  std::uint32_t faulty_count() const noexcept { return faulty_; }
  std::uint64_t exchanges() const noexcept { return index_; }
  std::uint64_t drift_max() const noexcept { return drift_max_; }
  Tally honest_tally() const override { return tally_; }
  std::uint32_t corruption_budget() const override { return budget_; }

 private:
  static constexpr std::uint8_t kHonest = 0;
  static constexpr std::uint8_t kMimic = 1;
  static constexpr std::uint8_t kBoost = 2;

  std::uint32_t size() const override { return n_; }

  NodeSummary summary(NodeId id) const override {
    const State& s = states_.at(id);
    NodeSummary out;
    out.preference = M::preference(s);
    out.input = M::input(s);
    out.decided = M::decided(s);
    out.faulty = role_[id] != kHonest;
    out.phase = M::phase(s);
    out.exchanges = lifetime_[id];
    return out;
  }

  void count(const State& s, int d) {
    const auto step = static_cast<std::uint32_t>(d);
    const Value pref = M::preference(s);
    switch (pref) {
      case Value::A: tally_.a += step; break;
      case Value::B: tally_.b += step; break;
      case Value::Empty: tally_.empty += step; break;
    }
    if (M::decided(s))
      (pref == Value::A ? tally_.decided_a : tally_.decided_b) += step;
    else
      undecided_ += step;
    if (M::failed(s)) failed_ += step;
  }

  void apply(const std::vector<Corruption>& list) {
    for (const Corruption& c : list) {
      if (c.node >= n_ || role_[c.node] != kHonest || budget_ == 0)
        throw std::logic_error(fmt::format(
            "strategy '{}' broke the corruption rules on node {} (budget left {})",
            strategy_.name(), c.node, budget_));
      count(states_[c.node], -1);
      --budget_;
      ++faulty_;
      if (c.behaviour == Behaviour::Mimic) {
        role_[c.node] = kMimic;
        M::rewrite_input(states_[c.node], c.as_value);
      } else {
        role_[c.node] = kBoost;
      }
    }
  }

  PhaseStats& phase_stats(std::uint32_t phase, PhaseKind kind) {
    while (phases_.size() <= phase) {
      PhaseStats s;
      s.phase = static_cast<std::uint32_t>(phases_.size());
      s.kind = kind;
      phases_.push_back(s);
    }
    return phases_[phase];
  }

  static void enter(PhaseStats& s, Value v) {
    ++s.entered;
    switch (v) {
      case Value::A: ++s.entry_a; break;
      case Value::B: ++s.entry_b; break;
      case Value::Empty: ++s.entry_empty; break;
    }
  }

  void settle(const State& before, const State& after, const PhaseEvent& ev, const Effect& fx,
              int& cancelled_a, int& cancelled_b) {
    count(before, -1);
    count(after, +1);
    if (!M::decided(before) && M::decided(after)) decision_exchange_ = index_;
    if (fx.kind == EffectKind::Cancelled) ++(fx.value == Value::A ? cancelled_a : cancelled_b);
    if constexpr (M::kTracksPhases) {
      if (ev.wrapped) enter(phase_stats(ev.new_phase, ev.kind), after.saved);
      PhaseStats& s = phase_stats(after.phases, after.kind);
      if (s.first_exchange == 0) s.first_exchange = index_;
      s.last_exchange = index_;
      switch (fx.kind) {
        case EffectKind::Cancelled:
          ++(fx.value == Value::A ? s.cancelled_a : s.cancelled_b);
          break;
        case EffectKind::Adopted:
          ++(fx.value == Value::A ? s.adopted_a : s.adopted_b);
          break;
        case EffectKind::Decided:
          ++(fx.value == Value::A ? s.decided_a : s.decided_b);
          break;
        default:
          break;
      }
    }
  }

  void sample_drift() {
    const auto [lo, hi] = std::minmax_element(lifetime_.begin(), lifetime_.end());
    drift_max_ = std::max(drift_max_, *hi - *lo);
  }

  [[noreturn]] void violation(const std::string& what) {
    if (options_.trace == TraceMode::OnFailure && options_.trace_sink)
      options_.trace_sink->assign(trace_.begin(), trace_.end());
    throw InvariantViolation(fmt::format("exchange {}: {}", index_, what));
  }

  /// Both endpoint updates must not depend on the evaluation order.
  void check_atomic(const State& nu, const State& nv, const View& vu, const View& vv,
                    std::uint8_t ru, std::uint8_t rv) {
    if (ru == kBoost || rv == kBoost) return;
    State a_u = nu, a_v = nv, b_u = nu, b_v = nv;
    m_.act(a_u, vv);
    m_.act(a_v, vu);
    m_.act(b_v, vu);
    m_.act(b_u, vv);
    if (!(a_u == b_u) || !(a_v == b_v)) violation("endpoint updates depend on evaluation order");
  }

  void check_node(NodeId id, const State& before, const State& after) {
    if (const char* e = m_.check(after)) violation(fmt::format("node {}: {}", id, e));
    if (M::decided(before) &&
        (!M::decided(after) || M::preference(after) != M::preference(before)))
      violation(fmt::format("node {} changed a decided value", id));
    if (M::failed(before) && !(before == after))
      violation(fmt::format("failed node {} changed state", id));
  }

  void record(const ExchangeRecord& r) {
    if (options_.trace == TraceMode::Full) {
      if (options_.trace_sink)
        options_.trace_sink->push_back(r);
      else
        trace_.push_back(r);
      return;
    }
    trace_.push_back(r);
    if (trace_.size() > options_.trace_capacity) trace_.pop_front();
  }

  CombinedSummary combined_summary() const {
    CombinedSummary c;
    for (NodeId i = 0; i < n_; ++i) {
      if (role_[i] != kHonest) continue;
      const CombinedState& s = states_[i];
      const auto& x = s.x;
      if (s.z0 == 1) ++c.z0_one;
      if (is_set(x[0]) && x[0] == x[1] && x[1] == x[2]) ++c.x_all_equal;
      if (is_set(x[1]) && is_set(x[2]) && x[1] != x[2]) ++c.x2_ne_x3;
      if (s.run_index == kRunsDone && s.failf) ++c.slot_failures;
      if (s.endf) ++((s.z0 == 1 || x[1] == x[2]) ? c.x_path : c.y_path);
    }
    return c;
  }

  M m_;
  const ProtocolParams& params_;
  Strategy& strategy_;
  RunOptions options_;
  std::uint64_t seed_;
  std::uint32_t n_;
  std::uint32_t fault_bound_;
  std::uint32_t budget_;
  std::uint32_t faulty_ = 0;
  Rng sched_;
  std::vector<State> states_;
  std::vector<std::uint8_t> role_;
  std::vector<std::uint64_t> lifetime_;
  Tally tally_;
  std::uint32_t undecided_ = 0;
  std::uint32_t failed_ = 0;
  std::uint64_t index_ = 0;
  std::uint64_t decision_exchange_ = 0;
  std::uint64_t drift_max_ = 0;
  std::uint64_t honest_faulty_ = 0;
  std::uint64_t cancellation_imbalance_ = 0;
  std::vector<PhaseStats> phases_;
  std::deque<ExchangeRecord> trace_;
};

}  // namespace bpp
