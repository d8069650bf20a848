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

#include <gtest/gtest.h>

#include "bpp/phase.hpp"

namespace bpp {
namespace {

ProtocolParams small_params() {
  ProtocolParams p = make_params("desk", 1000);
  p.phase_length = 24;
  p.psi = 8;
  p.sigma1 = 2;
  p.sigma2 = 5;
  p.gamma = 2;
  p.phases_limit = 10;
  p.validate();
  return p;
}

TEST(Subphase, FloorOfCounterOverThird) {
  EXPECT_EQ(subphase_of(0, 24), 0);
  EXPECT_EQ(subphase_of(7, 24), 0);
  EXPECT_EQ(subphase_of(8, 24), 1);
  EXPECT_EQ(subphase_of(23, 24), 2);
}

TEST(PhaseKind, AcpdCycleWithGammaTwo) {
  const PhaseKind expect[] = {PhaseKind::Cancellation, PhaseKind::Cancellation,
                              PhaseKind::Termination, PhaseKind::Duplication,
                              PhaseKind::Cancellation, PhaseKind::Cancellation};
  for (std::uint32_t i = 0; i < 6; ++i)
    EXPECT_EQ(phase_kind(i, PhaseSchedule::AcpdCycle, 2), expect[i]) << i;
}

TEST(PhaseKind, ScfdCycle) {
  EXPECT_EQ(phase_kind(0, PhaseSchedule::ScfdCycle, 1), PhaseKind::Cancellation);
  EXPECT_EQ(phase_kind(1, PhaseSchedule::ScfdCycle, 1), PhaseKind::Termination);
  EXPECT_EQ(phase_kind(2, PhaseSchedule::ScfdCycle, 1), PhaseKind::Duplication);
  EXPECT_EQ(phase_kind(3, PhaseSchedule::ScfdCycle, 1), PhaseKind::Cancellation);
}

TEST(PhaseKind, TerminationFirst) {
  EXPECT_EQ(phase_kind(0, PhaseSchedule::ScfdTerminationFirst, 1), PhaseKind::Termination);
  EXPECT_EQ(phase_kind(1, PhaseSchedule::ScfdTerminationFirst, 1), PhaseKind::Cancellation);
  EXPECT_EQ(phase_kind(2, PhaseSchedule::ScfdTerminationFirst, 1), PhaseKind::Termination);
  EXPECT_EQ(phase_kind(3, PhaseSchedule::ScfdTerminationFirst, 1), PhaseKind::Duplication);
}

TEST(PhaseKind, PeriodicProperty) {
  for (std::uint32_t gamma = 1; gamma <= 5; ++gamma) {
    const std::uint32_t period = schedule_period(PhaseSchedule::AcpdCycle, gamma);
    EXPECT_EQ(period, gamma + 2);
    for (std::uint32_t i = 0; i < 200; ++i)
      EXPECT_EQ(phase_kind(i, PhaseSchedule::AcpdCycle, gamma),
                phase_kind(i + period, PhaseSchedule::AcpdCycle, gamma));
  }
  for (std::uint32_t i = 0; i < 200; ++i) {
    EXPECT_EQ(phase_kind(i, PhaseSchedule::ScfdCycle, 1), phase_kind(i + 3, PhaseSchedule::ScfdCycle, 1));
    EXPECT_EQ(phase_kind(i + 1, PhaseSchedule::ScfdTerminationFirst, 1),
              phase_kind(i + 4, PhaseSchedule::ScfdTerminationFirst, 1));
  }
}

TEST(AdvanceCounter, WrapStartsANewPhaseAndSnapshots) {
  const ProtocolParams p = small_params();
  NodeState s = initial_state(Value::A, PhaseSchedule::AcpdCycle, p.gamma);
  s.counter = 23;
  s.cancelled_this_phase = true;
  s.adopted_this_phase = true;
  s.cloned_this_phase = true;
  const PhaseEvent ev = advance_counter(s, p, PhaseSchedule::AcpdCycle);
  EXPECT_TRUE(ev.wrapped);
  EXPECT_EQ(s.counter, 0u);
  EXPECT_EQ(s.phases, 1u);
  EXPECT_EQ(ev.new_phase, 1u);
  EXPECT_EQ(s.saved, Value::A);
  EXPECT_TRUE(s.nonempty_at_phase_start);
  EXPECT_FALSE(s.cancelled_this_phase);
  EXPECT_FALSE(s.adopted_this_phase);
  EXPECT_FALSE(s.cloned_this_phase);
  EXPECT_EQ(s.kind, PhaseKind::Cancellation);
  EXPECT_FALSE(ev.limit_reached);
}

TEST(AdvanceCounter, PlainTick) {
  const ProtocolParams p = small_params();
  NodeState s = initial_state(Value::B, PhaseSchedule::ScfdCycle, 1);
  s.counter = 3;
  NodeState before = s;
  const PhaseEvent ev = advance_counter(s, p, PhaseSchedule::ScfdCycle);
  EXPECT_FALSE(ev.wrapped);
  EXPECT_EQ(s.counter, 4u);
  before.counter = 4;
  EXPECT_EQ(s, before);
}

TEST(AdvanceCounter, EnteringTerminationClearsProbes) {
  const ProtocolParams p = small_params();
  NodeState s = initial_state(Value::A, PhaseSchedule::ScfdCycle, 1);
  s.counter = 23;
  s.probe_a = 3;
  s.probe_b = 1;
  s.probe_seen = 6;
  advance_counter(s, p, PhaseSchedule::ScfdCycle);
  EXPECT_EQ(s.kind, PhaseKind::Termination);
  EXPECT_EQ(s.probe_seen, 0u);
  EXPECT_EQ(s.probe_a, 0u);
  EXPECT_EQ(s.probe_b, 0u);
}

TEST(AdvanceCounter, LimitFailsAnUndecidedNode) {
  const ProtocolParams p = small_params();
  NodeState s = initial_state(Value::A, PhaseSchedule::ScfdCycle, 1);
  s.phases = static_cast<std::uint16_t>(p.phases_limit - 1);
  s.counter = 23;
  const PhaseEvent ev = advance_counter(s, p, PhaseSchedule::ScfdCycle);
  EXPECT_TRUE(ev.limit_reached);
  EXPECT_TRUE(s.halted);
  EXPECT_TRUE(s.failf);
}

TEST(AdvanceCounter, LimitHaltsADecidedNodeWithoutFailure) {
  const ProtocolParams p = small_params();
  NodeState s = initial_state(Value::A, PhaseSchedule::ScfdCycle, 1);
  s.endf = true;
  s.phases = static_cast<std::uint16_t>(p.phases_limit - 1);
  s.counter = 23;
  EXPECT_TRUE(advance_counter(s, p, PhaseSchedule::ScfdCycle).limit_reached);
  EXPECT_TRUE(s.halted);
  EXPECT_FALSE(s.failf);
}

TEST(AdvanceCounter, CounterStaysInRange) {
  const ProtocolParams p = small_params();
  NodeState s = initial_state(Value::A, PhaseSchedule::AcpdCycle, p.gamma);
  for (int i = 0; i < 1000 && !s.halted; ++i) {
    advance_counter(s, p, PhaseSchedule::AcpdCycle);
    ASSERT_LT(s.counter, p.phase_length);
    ASSERT_EQ(check_node_invariants(s, p), nullptr);
  }
  EXPECT_TRUE(s.halted);
}

TEST(TerminationProbe, CountsPartnerValues) {
  const ProtocolParams p = small_params();
  NodeState s;
  termination_probe(s, Value::A, p);
  EXPECT_EQ(s.probe_a, 1u);
  EXPECT_EQ(s.probe_seen, 1u);
  termination_probe(s, Value::Empty, p);
  EXPECT_EQ(s.probe_a, 1u);
  EXPECT_EQ(s.probe_b, 0u);
  EXPECT_EQ(s.probe_seen, 2u);
}

TEST(TerminationProbe, NoOpOncePsiSeen) {
  const ProtocolParams p = small_params();
  NodeState s;
  s.probe_seen = static_cast<std::uint16_t>(p.psi);
  termination_probe(s, Value::B, p);
  EXPECT_EQ(s.probe_b, 0u);
  EXPECT_EQ(s.probe_seen, p.psi);
}

TEST(TerminationProbe, NoOpWhenDecided) {
  const ProtocolParams p = small_params();
  NodeState s;
  s.endf = true;
  s.value = Value::A;
  termination_probe(s, Value::B, p);
  EXPECT_EQ(s.probe_seen, 0u);
}

NodeState probed(std::uint16_t a, std::uint16_t b, std::uint16_t seen) {
  NodeState s;
  s.value = Value::Empty;
  s.probe_a = a;
  s.probe_b = b;
  s.probe_seen = seen;
  return s;
}

TEST(TerminationDecide, DecidesA) {
  const ProtocolParams p = small_params();
  NodeState s = probed(6, 1, 8);
  EXPECT_EQ(termination_decide(s, p), Value::A);
  EXPECT_TRUE(s.endf);
  EXPECT_EQ(s.value, Value::A);
}

TEST(TerminationDecide, TieDecidesNothing) {
  const ProtocolParams p = small_params();
  NodeState s = probed(4, 4, 8);
  EXPECT_FALSE(termination_decide(s, p).has_value());
  EXPECT_FALSE(s.endf);
}

TEST(TerminationDecide, DecidesB) {
  const ProtocolParams p = small_params();
  NodeState s = probed(0, 8, 8);
  EXPECT_EQ(termination_decide(s, p), Value::B);
  EXPECT_EQ(s.value, Value::B);
}

TEST(TerminationDecide, WaitsForPsiProbes) {
  const ProtocolParams p = small_params();
  NodeState s = probed(7, 0, 7);
  EXPECT_FALSE(termination_decide(s, p).has_value());
}

TEST(TerminationDecide, NeverBothValuesExhaustive) {
  const ProtocolParams p = small_params();
  for (std::uint16_t a = 0; a <= p.psi; ++a) {
    for (std::uint16_t b = 0; a + b <= p.psi; ++b) {
      const bool for_a = b <= p.sigma1 && a >= p.sigma2;
      const bool for_b = a <= p.sigma1 && b >= p.sigma2;
      EXPECT_FALSE(for_a && for_b);
      NodeState s = probed(a, b, static_cast<std::uint16_t>(p.psi));
      const auto d = termination_decide(s, p);
      if (for_a) {
        EXPECT_EQ(d, Value::A);
      } else if (for_b) {
        EXPECT_EQ(d, Value::B);
      } else {
        EXPECT_FALSE(d.has_value());
      }
    }
  }
}

TEST(PropagateFailure, FailedPartnerFails) {
  NodeState s;
  propagate_failure(s, true);
  EXPECT_TRUE(s.failf);
  NodeState t;
  propagate_failure(t, false);
  EXPECT_FALSE(t.failf);
}

TEST(Present, CopiesTheVisibleFields) {
  const ProtocolParams p = small_params();
  NodeState s;
  s.value = Value::B;
  s.saved = Value::A;
  s.endf = false;
  s.nonempty_at_phase_start = true;
  s.cloned_this_phase = true;
  s.counter = 9;
  s.phases = 4;
  s.failf = true;
  const NodeView v = present(s, p);
  EXPECT_EQ(v.value, Value::B);
  EXPECT_EQ(v.saved, Value::A);
  EXPECT_TRUE(v.nonempty_at_phase_start);
  EXPECT_TRUE(v.cloned_this_phase);
  EXPECT_EQ(v.subphase, 1);
  EXPECT_EQ(v.phases, 4u);
  EXPECT_FALSE(v.failf);
}

TEST(Invariants, CatchBrokenStates) {
  const ProtocolParams p = small_params();
  NodeState s;
  EXPECT_EQ(check_node_invariants(s, p), nullptr);
  s.endf = true;
  EXPECT_NE(check_node_invariants(s, p), nullptr);
  s = NodeState{};
  s.probe_a = 2;
  s.probe_seen = 1;
  EXPECT_NE(check_node_invariants(s, p), nullptr);
  s = NodeState{};
  s.counter = 24;
  EXPECT_NE(check_node_invariants(s, p), nullptr);
}

}  // namespace
}  // namespace bpp
