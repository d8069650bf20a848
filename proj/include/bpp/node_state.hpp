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

#pragma once

#include <cstdint>

#include "bpp/value.hpp"

namespace bpp {

enum class PhaseKind : std::uint8_t { Cancellation, Termination, Duplication };

constexpr const char* to_string(PhaseKind k) noexcept {
  switch (k) {
    case PhaseKind::Cancellation: return "cancellation";
    case PhaseKind::Termination: return "termination";
    case PhaseKind::Duplication: return "duplication";
  }
  return "?";
}

/// Per-node state shared by the ACPD and SCFD machines.
struct NodeState {
  Value value = Value::Empty;
  Value saved = Value::Empty;
  PhaseKind kind = PhaseKind::Cancellation;  // cached kind of `phases`
  bool endf = false;
  bool failf = false;
  bool halted = false;  // reached phases_limit; no further updates
  bool cancelled_this_phase = false;
  bool adopted_this_phase = false;
  bool cloned_this_phase = false;
  bool nonempty_at_phase_start = false;
  std::uint16_t phases = 0;
  std::uint16_t phase_base = 0;  // phases_limit counts from here
  std::uint16_t decided_phase = 0;
  std::uint16_t probe_a = 0;
  std::uint16_t probe_b = 0;
  std::uint16_t probe_seen = 0;
  std::uint32_t counter = 0;  // local counter mod D

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// What a partner reads during an exchange. Faulty nodes may present any
/// view, except that failf is never set.
struct NodeView {
  Value value = Value::Empty;
  Value saved = Value::Empty;
  bool endf = false;
  bool failf = false;
  bool nonempty_at_phase_start = false;
  bool cloned_this_phase = false;
  std::uint8_t subphase = 0;
  std::uint16_t phases = 0;

  friend bool operator==(const NodeView&, const NodeView&) = default;
};

}  // namespace bpp
