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

#include <cmath>

#include "bpp/combined.hpp"
#include "bpp/engine.hpp"

namespace bpp {
namespace {

ProtocolParams probe_params() {
  ProtocolParams p = make_params("desk", 1000);
  p.z0_probe_length = 8;
  p.z0_threshold = 3;
  return p;
}

CombinedState after_probes(int a, int b, const ProtocolParams& p) {
  CombinedState cs = Combined::initial(Value::A, 1);
  for (int i = 0; i < a; ++i) z0_probe_step(cs, Value::A, p);
  for (int i = 0; i < b; ++i) z0_probe_step(cs, Value::B, p);
  return cs;
}

TEST(Z0Probe, LargeDifferenceSetsOne) { EXPECT_EQ(after_probes(8, 0, probe_params()).z0, 1); }

TEST(Z0Probe, TieSetsZero) { EXPECT_EQ(after_probes(4, 4, probe_params()).z0, 0); }

TEST(Z0Probe, DifferenceBelowThresholdSetsZero) {
  EXPECT_EQ(after_probes(5, 3, probe_params()).z0, 0);
}

TEST(Z0Probe, UnsetUntilAllObservationsArrive) {
  const ProtocolParams p = probe_params();
  CombinedState cs = after_probes(7, 0, p);
  EXPECT_EQ(cs.z0, -1);
  z0_probe_step(cs, Value::Empty, p);
  EXPECT_EQ(cs.z0, 1);
  EXPECT_EQ(cs.z0_seen, 8u);
  // set once: later observations are ignored
  z0_probe_step(cs, Value::B, p);
  EXPECT_EQ(cs.z0_seen, 8u);
  EXPECT_EQ(cs.z0_count_b, 0u);
}

TEST(BiasedCoin, ZeroRoundsAlwaysOne) {
  CoinTape tape(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(biased_coin(tape, 0), 1);
}

TEST(BiasedCoin, OneRoundIsFair) {
  CoinTape tape(4);
  const int draws = 100000;
  int ones = 0;
  for (int i = 0; i < draws; ++i) ones += biased_coin(tape, 1);
  EXPECT_NEAR(ones, draws / 2.0, 4 * std::sqrt(draws * 0.25));
}

TEST(BiasedCoin, SevenRoundsForThousandTwentyFour) {
  const std::uint32_t l = coin_rounds_for(1024, 1.0);
  ASSERT_EQ(l, 7u);
  CoinTape tape(5);
  const int draws = 200000;
  int ones = 0;
  std::uint32_t deepest_max = 0;
  for (int i = 0; i < draws; ++i) {
    std::uint32_t deepest = 0;
    ones += biased_coin(tape, l, &deepest);
    deepest_max = std::max(deepest_max, deepest);
  }
  const double p = 1.0 / 128;
  EXPECT_NEAR(ones, draws * p, 4 * std::sqrt(draws * p * (1 - p)));
  EXPECT_LE(deepest_max, l);
}

TEST(ApplyBias, Examples) {
  EXPECT_EQ(apply_bias(Value::B, 1, 1), Value::B);
  EXPECT_EQ(apply_bias(Value::B, 2, 1), Value::A);
  EXPECT_EQ(apply_bias(Value::B, 3, 1), Value::B);
  EXPECT_EQ(apply_bias(Value::A, 3, 1), Value::B);
  EXPECT_EQ(apply_bias(Value::A, 2, 1), Value::A);
  EXPECT_EQ(apply_bias(Value::A, 3, 0), Value::A);
  EXPECT_EQ(apply_bias(Value::B, 2, 0), Value::B);
  EXPECT_THROW(apply_bias(Value::A, 4, 1), DomainError);
}

constexpr Value A = Value::A, B = Value::B, E = Value::Empty;

TEST(CombinedDecide, Examples) {
  EXPECT_EQ(combined_decide(1, {A, B, B}, {B, E, E}), A);
  EXPECT_EQ(combined_decide(0, {A, A, A}, {B, E, E}), A);
  EXPECT_EQ(combined_decide(0, {A, A, B}, {B, E, E}), B);
}

TEST(CombinedDecide, EmptySlotMeansNoAnswer) {
  EXPECT_FALSE(combined_decide(1, {E, A, A}, {A, A, A}).has_value());
  EXPECT_FALSE(combined_decide(0, {A, E, A}, {A, A, A}).has_value());
  EXPECT_FALSE(combined_decide(0, {A, A, B}, {E, A, A}).has_value());
  EXPECT_FALSE(combined_decide(-1, {A, A, A}, {A, A, A}).has_value());
}

TEST(CombinedDecide, OracleOverAllInputs) {
  const Value vals[] = {A, B, E};
  for (int z0 : {0, 1})
    for (Value x1 : vals)
      for (Value x2 : vals)
        for (Value x3 : vals)
          for (Value y1 : vals) {
            std::optional<Value> expect;
            Value pick = E;
            if (z0 == 1) pick = x1;
            else if (is_set(x2) && is_set(x3)) pick = x2 == x3 ? x1 : y1;
            if (is_set(pick)) expect = pick;
            EXPECT_EQ(combined_decide(z0, {x1, x2, x3}, {y1, E, E}), expect);
          }
}

TEST(Combined, RunBoundaryResetsSubMachines) {
  const ProtocolParams p = make_params("desk", 1000);
  CombinedState cs = Combined::initial(Value::B, 9);
  cs.z0 = 0;
  cs.run_index = 1;
  cs.clock_phases = 20;
  cs.clock_counter = p.phase_length - 1;
  for (NodeState* sub : {&cs.acpd, &cs.scfd}) {
    sub->value = Value::A;
    sub->endf = true;
    sub->decided_phase = 2;
    sub->phases = 19;
    sub->counter = p.phase_length - 1;
    sub->probe_seen = 4;
    sub->probe_a = 4;
  }
  CombinedFailSignal none;
  none.run_index = 1;
  Combined::advance(cs, none, p);
  ASSERT_EQ(cs.clock_counter, 0u);
  CombinedView partner = Combined::present(cs, Combined::fail_signal(cs), p);
  partner.run_index = 1;
  Combined::act(cs, partner, p);
  EXPECT_EQ(cs.run_index, 2);
  EXPECT_EQ(cs.x[0], Value::A);
  EXPECT_EQ(cs.y[0], Value::A);
  EXPECT_EQ(cs.original_value, Value::B);
  for (const NodeState* sub : {&cs.acpd, &cs.scfd}) {
    EXPECT_FALSE(sub->endf);
    EXPECT_EQ(sub->probe_seen, 0u);
    EXPECT_EQ(sub->phases, 21u);
    EXPECT_EQ(sub->phase_base, 21u);
    EXPECT_EQ(sub->counter, 0u);
    EXPECT_TRUE(sub->value == Value::A || sub->value == Value::B);
  }
  EXPECT_LE(cs.coin_counter, p.coin_rounds);
}

TEST(Combined, EarlierRunPartnersDoNotInteract) {
  const ProtocolParams p = make_params("desk", 1000);
  CombinedState cs = Combined::initial(Value::A, 9);
  cs.z0 = 1;
  cs.run_index = 2;
  cs.acpd = initial_state(Value::A, PhaseSchedule::AcpdCycle, p.gamma);
  cs.scfd = initial_state(Value::A, PhaseSchedule::ScfdCycle, 1);
  cs.clock_counter = 5;
  const CombinedState before = cs;
  CombinedView partner;
  partner.run_index = 1;
  partner.acpd.value = Value::B;
  partner.acpd.saved = Value::B;
  partner.acpd.subphase = 1;
  partner.scfd = partner.acpd;
  Combined::act(cs, partner, p);
  EXPECT_EQ(cs, before);
}

TEST(Combined, LaterRunPartnerAnswersProbesWhateverItsClock) {
  const ProtocolParams p = make_params("desk", 1000);
  CombinedState cs = Combined::initial(Value::B, 9);
  cs.z0 = 0;
  cs.run_index = 1;
  cs.acpd = initial_state(Value::B, PhaseSchedule::AcpdCycle, p.gamma);
  cs.acpd.phases = 12;
  cs.acpd.kind = PhaseKind::Termination;
  cs.acpd.counter = p.phase_length / 2;
  cs.scfd = cs.acpd;
  cs.clock_counter = cs.acpd.counter;
  CombinedView partner;
  partner.run_index = 3;
  partner.acpd.phases = 40;
  partner.x = {Value::A, Value::B, Value::Empty};
  Combined::act(cs, partner, p);
  EXPECT_EQ(cs.acpd.probe_seen, 1u);
  EXPECT_EQ(cs.acpd.probe_a, 1u);
  EXPECT_EQ(cs.scfd.probe_seen, 0u);  // no run-1 SCFD answer recorded

  const NodeView v = finished_run_view(Value::A, 12);
  EXPECT_TRUE(v.endf);
  EXPECT_EQ(v.saved, Value::A);
  EXPECT_EQ(v.phases, 12u);
  EXPECT_EQ(v.subphase, 1u);
}

TEST(Combined, FailedNodeSignalsFailure) {
  const ProtocolParams p = make_params("desk", 1000);
  CombinedState cs = Combined::initial(Value::A, 1);
  cs.run_index = 1;
  CombinedFailSignal sig;
  sig.node = true;
  Combined::advance(cs, sig, p);
  EXPECT_TRUE(cs.failf);
}

TEST(Combined, UnanimousSmallPopulationDecides) {
  const ProtocolParams p = make_params("desk", 60);
  NoAdversary none;
  const RunResult r = run(Protocol::Combined, p, build_initial(60, 60, 0), none, 17,
                          default_max_exchanges(Protocol::Combined, p));
  EXPECT_EQ(r.outcome, Outcome::DecidedA);
  EXPECT_EQ(r.final_tally.decided_a, 60u);
}

}  // namespace
}  // namespace bpp
