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

// Combined protocol: a Z0 bias probe, then three runs of ACPD and SCFD
// side by side in every node, runs 2 and 3 started from locally biased
// values, and a final rule choosing between the run-1 answers.

#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "bpp/node_state.hpp"
#include "bpp/params.hpp"
#include "bpp/phase.hpp"

namespace bpp {

inline constexpr std::uint8_t kPrologue = 0;
inline constexpr std::uint8_t kRunsDone = 4;

/// Private coin tape of a node (splitmix64 stream).
class CoinTape {
 public:
  using result_type = std::uint64_t;
  explicit CoinTape(std::uint64_t seed = 0) noexcept : state_(seed) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept;
  friend bool operator==(const CoinTape&, const CoinTape&) = default;

 private:
  std::uint64_t state_;
};

/// Sub-machine phases are numbered on one clock that keeps running across
/// runs; a node moves on to the next run at the first phase boundary after
/// both sub-machines finish, so late nodes rejoin in step with the rest.
struct CombinedState {
  Value original_value = Value::Empty;
  std::int8_t z0 = -1;  // -1 while unset
  std::uint8_t run_index = kPrologue;
  bool endf = false;
  bool failf = false;
  Value decision = Value::Empty;
  std::uint8_t coin_counter = 0;  // deepest coin round reached so far
  std::uint16_t z0_count_a = 0;
  std::uint16_t z0_count_b = 0;
  std::uint16_t z0_seen = 0;
  std::uint32_t clock_counter = 0;  // shared phase clock of the runs
  std::uint16_t clock_phases = 0;
  std::array<Value, 3> x{Value::Empty, Value::Empty, Value::Empty};  // ACPD per run
  std::array<Value, 3> y{Value::Empty, Value::Empty, Value::Empty};  // SCFD per run
  NodeState acpd;
  NodeState scfd;
  CoinTape tape;

  friend bool operator==(const CombinedState&, const CombinedState&) = default;
};

struct CombinedView {
  std::uint8_t run_index = kPrologue;
  Value original_value = Value::Empty;
  NodeView acpd;
  NodeView scfd;
  // finished runs stay readable to nodes still in them
  std::array<Value, 3> x{Value::Empty, Value::Empty, Value::Empty};
  std::array<Value, 3> y{Value::Empty, Value::Empty, Value::Empty};
};

/// How a node that has moved past a run looks to a node still in it: its
/// recorded answer, decided and frozen, so clock drift does not matter.
NodeView finished_run_view(Value answer, std::uint16_t reader_phases) noexcept;

/// Failure as seen by a partner before the exchange: sub-machine failures
/// only spread within the same run.
struct CombinedFailSignal {
  bool node = false;  // the node as a whole has failed
  std::uint8_t run_index = kPrologue;
  bool acpd = false;
  bool scfd = false;
};

/// Counts one prologue observation; once z0_probe_length observations are
/// in, sets z0 = 1 iff |count_a - count_b| >= z0_threshold.
void z0_probe_step(CombinedState& cs, Value partner_value, const ProtocolParams& params);

/// Tosses fair coins until `rounds` heads in a row (returns 1) or the
/// first tail (returns 0). P(1) = 2^-rounds. `deepest` receives the
/// number of heads seen.
template <class URBG>
int biased_coin(URBG& rng, std::uint32_t rounds, std::uint32_t* deepest = nullptr) {
  std::uint32_t heads = 0;
  int result = 1;
  while (heads < rounds) {
    if ((rng() >> 63) == 0) {
      result = 0;
      break;
    }
    ++heads;
  }
  if (deepest) *deepest = heads;
  return result;
}

/// Starting value of a run: run 1 keeps the input, run 2 turns B into A on
/// coin = 1, run 3 turns A into B on coin = 1.
Value apply_bias(Value original, int run_index, int coin);

/// Final answer: z0 = 1 -> x1; z0 = 0 and x2 = x3 -> x1; otherwise y1.
/// Empty when the needed slot is empty.
std::optional<Value> combined_decide(int z0, const std::array<Value, 3>& x,
                                     const std::array<Value, 3>& y);

/// Per-endpoint machine around two sub-machines.
struct Combined {
  static CombinedState initial(Value input, std::uint64_t coin_seed);
  static CombinedFailSignal fail_signal(const CombinedState& s) noexcept;
  static void advance(CombinedState& s, const CombinedFailSignal& partner,
                      const ProtocolParams& params);
  static CombinedView present(const CombinedState& advanced, const CombinedFailSignal& own_pre,
                              const ProtocolParams& params) noexcept;
  /// Effects reported are those of the ACPD sub-machine.
  static Effect act(CombinedState& s, const CombinedView& partner, const ProtocolParams& params);

  /// A sub-machine has finished its run once failed or halted, or once
  /// decided and past the next termination phase after its decision.
  static bool sub_finished(const NodeState& sub, PhaseSchedule schedule,
                           const ProtocolParams& params) noexcept;
};

}  // namespace bpp
