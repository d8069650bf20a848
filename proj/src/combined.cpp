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

#include "bpp/combined.hpp"

#include <algorithm>
#include <cstdlib>

#include "bpp/acpd.hpp"
#include "bpp/scfd.hpp"
#include "bpp/scheduler.hpp"

namespace bpp {

namespace {

constexpr PhaseSchedule kAcpdSchedule = PhaseSchedule::AcpdCycle;
constexpr PhaseSchedule kScfdSchedule = PhaseSchedule::ScfdCycle;

NodeState run_state(Value v, PhaseSchedule schedule, const CombinedState& cs,
                    const ProtocolParams& params) {
  NodeState s = initial_state(v, schedule, params.gamma);
  if (cs.clock_phases > 0) {
    s.phases = cs.clock_phases;
    s.phase_base = cs.clock_phases;
    s.counter = cs.clock_counter;
    s.kind = phase_kind(s.phases, schedule, params.gamma);
    s.saved = v;
    s.nonempty_at_phase_start = is_set(v);
  }
  return s;
}

void start_run(CombinedState& cs, std::uint8_t run, const ProtocolParams& params) {
  Value v = cs.original_value;
  if (run > 1) {
    std::uint32_t deepest = 0;
    const int coin = biased_coin(cs.tape, params.coin_rounds, &deepest);
    cs.coin_counter = static_cast<std::uint8_t>(std::max<std::uint32_t>(cs.coin_counter, deepest));
    v = apply_bias(cs.original_value, run, coin);
  }
  cs.run_index = run;
  cs.acpd = run_state(v, kAcpdSchedule, cs, params);
  cs.scfd = run_state(v, kScfdSchedule, cs, params);
}

Value outcome_of(const NodeState& sub) { return sub.endf ? sub.value : Value::Empty; }

void finish_run(CombinedState& cs, const ProtocolParams& params) {
  const std::size_t slot = cs.run_index - 1;
  cs.x[slot] = outcome_of(cs.acpd);
  cs.y[slot] = outcome_of(cs.scfd);
  if (cs.run_index < 3) {
    start_run(cs, static_cast<std::uint8_t>(cs.run_index + 1), params);
    return;
  }
  cs.run_index = kRunsDone;
  if (auto d = combined_decide(cs.z0, cs.x, cs.y)) {
    cs.endf = true;
    cs.decision = *d;
  } else {
    cs.failf = true;
  }
}

void advance_sub(NodeState& sub, bool partner_failed, PhaseSchedule schedule,
                 const ProtocolParams& params) {
  if (sub.failf || sub.halted) return;
  propagate_failure(sub, partner_failed);
  if (!sub.failf) advance_counter(sub, params, schedule);
}

}  // namespace

CoinTape::result_type CoinTape::operator()() noexcept {
  const std::uint64_t out = mix64(state_);
  state_ += 0x9e3779b97f4a7c15ULL;
  return out;
}

void z0_probe_step(CombinedState& cs, Value partner_value, const ProtocolParams& params) {
  if (cs.z0 >= 0) return;
  ++cs.z0_seen;
  if (partner_value == Value::A) ++cs.z0_count_a;
  if (partner_value == Value::B) ++cs.z0_count_b;
  if (cs.z0_seen >= params.z0_probe_length) {
    const int diff = std::abs(static_cast<int>(cs.z0_count_a) - static_cast<int>(cs.z0_count_b));
    cs.z0 = diff >= static_cast<int>(params.z0_threshold) ? 1 : 0;
  }
}

Value apply_bias(Value original, int run_index, int coin) {
  if (run_index < 1 || run_index > 3) throw DomainError("run index must be 1, 2 or 3");
  if (coin == 1 && run_index == 2 && original == Value::B) return Value::A;
  if (coin == 1 && run_index == 3 && original == Value::A) return Value::B;
  return original;
}

std::optional<Value> combined_decide(int z0, const std::array<Value, 3>& x,
                                     const std::array<Value, 3>& y) {
  auto slot = [](Value v) -> std::optional<Value> {
    if (is_set(v)) return v;
    return std::nullopt;
  };
  if (z0 == 1) return slot(x[0]);
  if (z0 != 0 || !is_set(x[1]) || !is_set(x[2])) return std::nullopt;
  return x[1] == x[2] ? slot(x[0]) : slot(y[0]);
}

NodeView finished_run_view(Value answer, std::uint16_t reader_phases) noexcept {
  NodeView v;
  v.value = answer;
  v.saved = answer;
  v.endf = true;
  v.nonempty_at_phase_start = is_set(answer);
  v.cloned_this_phase = true;
  v.subphase = 1;
  v.phases = reader_phases;
  return v;
}

CombinedState Combined::initial(Value input, std::uint64_t coin_seed) {
  CombinedState cs;
  cs.original_value = input;
  cs.tape = CoinTape(coin_seed);
  return cs;
}

CombinedFailSignal Combined::fail_signal(const CombinedState& s) noexcept {
  return {s.failf, s.run_index, s.acpd.failf, s.scfd.failf};
}

void Combined::advance(CombinedState& s, const CombinedFailSignal& partner,
                       const ProtocolParams& params) {
  if (s.failf) return;
  if (partner.node) {
    s.failf = true;
    return;
  }
  if (s.run_index == kPrologue || s.run_index == kRunsDone) return;
  if (++s.clock_counter == params.phase_length) {
    s.clock_counter = 0;
    ++s.clock_phases;
  }
  const bool same_run = partner.run_index == s.run_index;
  advance_sub(s.acpd, same_run && partner.acpd, kAcpdSchedule, params);
  advance_sub(s.scfd, same_run && partner.scfd, kScfdSchedule, params);
}

CombinedView Combined::present(const CombinedState& s, const CombinedFailSignal& own_pre,
                               const ProtocolParams& params) noexcept {
  CombinedView v;
  v.run_index = s.run_index;
  v.original_value = s.original_value;
  v.acpd = bpp::present(s.acpd, params);
  v.acpd.failf = own_pre.acpd;
  v.scfd = bpp::present(s.scfd, params);
  v.scfd.failf = own_pre.scfd;
  v.x = s.x;
  v.y = s.y;
  return v;
}

Effect Combined::act(CombinedState& s, const CombinedView& partner, const ProtocolParams& params) {
  if (s.failf || s.run_index == kRunsDone) return {};
  if (s.run_index == kPrologue) {
    z0_probe_step(s, partner.original_value, params);
    if (s.z0 >= 0) start_run(s, 1, params);
    return {};
  }
  Effect e;
  if (partner.run_index == s.run_index) {
    e = Acpd::act(s.acpd, partner.acpd, params);
    Scfd::act(s.scfd, partner.scfd, params);
  } else if (partner.run_index > s.run_index) {
    const std::size_t slot = s.run_index - 1;
    if (is_set(partner.x[slot])) {
      e = Acpd::act(s.acpd, finished_run_view(partner.x[slot], s.acpd.phases), params);
    }
    if (is_set(partner.y[slot])) {
      Scfd::act(s.scfd, finished_run_view(partner.y[slot], s.scfd.phases), params);
    }
  }
  if (s.clock_counter == 0 && sub_finished(s.acpd, kAcpdSchedule, params) &&
      sub_finished(s.scfd, kScfdSchedule, params)) {
    finish_run(s, params);
  }
  return e;
}

bool Combined::sub_finished(const NodeState& sub, PhaseSchedule schedule,
                            const ProtocolParams& params) noexcept {
  if (sub.failf || sub.halted) return true;
  return sub.endf && sub.phases > sub.decided_phase + schedule_period(schedule, params.gamma);
}

}  // namespace bpp
