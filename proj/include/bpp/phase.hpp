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

// Phase machinery shared by the ACPD and SCFD machines: local counter
// and phase bookkeeping, subphase arithmetic, the phase-kind schedules,
// the termination check and failure propagation.

#pragma once

#include <cstdint>
#include <optional>

#include "bpp/node_state.hpp"
#include "bpp/params.hpp"

namespace bpp {

enum class PhaseSchedule : std::uint8_t {
  AcpdCycle,             // gamma x Cancellation, Termination, Duplication
  ScfdCycle,             // Cancellation, Termination, Duplication
  ScfdTerminationFirst,  // Termination, then ScfdCycle
};

struct PhaseEvent {
  bool wrapped = false;
  std::uint16_t new_phase = 0;
  PhaseKind kind = PhaseKind::Cancellation;
  std::uint8_t subphase = 0;
  bool limit_reached = false;
};

/// floor(counter / (D/3)).
constexpr std::uint8_t subphase_of(std::uint32_t counter, std::uint32_t phase_length) noexcept {
  return static_cast<std::uint8_t>(counter / (phase_length / 3));
}

/// Length of the repeating part of a schedule.
constexpr std::uint32_t schedule_period(PhaseSchedule s, std::uint32_t gamma) noexcept {
  return s == PhaseSchedule::AcpdCycle ? gamma + 2 : 3;
}

constexpr PhaseKind phase_kind(std::uint32_t phase_index, PhaseSchedule s,
                               std::uint32_t gamma) noexcept {
  switch (s) {
    case PhaseSchedule::AcpdCycle: {
      const std::uint32_t r = phase_index % (gamma + 2);
      if (r < gamma) return PhaseKind::Cancellation;
      return r == gamma ? PhaseKind::Termination : PhaseKind::Duplication;
    }
    case PhaseSchedule::ScfdCycle:
      return static_cast<PhaseKind>(phase_index % 3);
    case PhaseSchedule::ScfdTerminationFirst:
      if (phase_index == 0) return PhaseKind::Termination;
      return static_cast<PhaseKind>((phase_index - 1) % 3);
  }
  return PhaseKind::Cancellation;
}

/// Fresh state for a node whose input is `input`.
NodeState initial_state(Value input, PhaseSchedule schedule, std::uint32_t gamma);

/// Increments the counter mod D. On wrap: next phase, kind from the
/// schedule, one-shot guards re-armed, saved <- value, donor eligibility
/// recorded, probe tallies cleared for a termination phase. Reaching
/// phases_limit halts the node, and fails it if undecided.
PhaseEvent advance_counter(NodeState& node, const ProtocolParams& params, PhaseSchedule schedule);

/// One termination sample. No-op unless probe_seen < psi and the node is
/// undecided.
void termination_probe(NodeState& node, Value partner_value, const ProtocolParams& params);

/// Applied after the psi-th sample: decides A on probe_b <= sigma1 and
/// probe_a >= sigma2, symmetrically B, otherwise nothing.
std::optional<Value> termination_decide(NodeState& node, const ProtocolParams& params);

/// A failed partner fails this node too.
void propagate_failure(NodeState& node, bool partner_failed) noexcept;

/// The honest presentation of an already advanced state. failf is filled
/// in by the caller from the pre-exchange state.
NodeView present(const NodeState& advanced, const ProtocolParams& params) noexcept;

/// Outcome of one endpoint's action rules, for metrics and traces.
enum class EffectKind : std::uint8_t { None, Cancelled, Adopted, Cloned, Probed, Decided };

struct Effect {
  EffectKind kind = EffectKind::None;
  Value value = Value::Empty;  // value cancelled, adopted, cloned or decided
};

/// Debug check of the per-node invariants; returns a description of the
/// first violation or nullptr.
const char* check_node_invariants(const NodeState& node, const ProtocolParams& params) noexcept;

}  // namespace bpp
