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

#include "bpp/phase.hpp"

namespace bpp {

NodeState initial_state(Value input, PhaseSchedule schedule, std::uint32_t gamma) {
  NodeState s;
  s.value = input;
  s.kind = phase_kind(0, schedule, gamma);
  return s;
}

PhaseEvent advance_counter(NodeState& node, const ProtocolParams& params, PhaseSchedule schedule) {
  PhaseEvent ev;
  if (++node.counter == params.phase_length) {
    node.counter = 0;
    ++node.phases;
    node.kind = phase_kind(node.phases, schedule, params.gamma);
    node.cancelled_this_phase = false;
    node.adopted_this_phase = false;
    node.cloned_this_phase = false;
    node.saved = node.value;
    node.nonempty_at_phase_start = is_set(node.value);
    if (node.kind == PhaseKind::Termination) {
      node.probe_a = 0;
      node.probe_b = 0;
      node.probe_seen = 0;
    }
    ev.wrapped = true;
    if (static_cast<std::uint32_t>(node.phases - node.phase_base) >= params.phases_limit) {
      ev.limit_reached = true;
      node.halted = true;
      if (!node.endf) node.failf = true;
    }
  }
  ev.new_phase = node.phases;
  ev.kind = node.kind;
  ev.subphase = subphase_of(node.counter, params.phase_length);
  return ev;
}

void termination_probe(NodeState& node, Value partner_value, const ProtocolParams& params) {
  if (node.endf || node.probe_seen >= params.psi) return;
  ++node.probe_seen;
  if (partner_value == Value::A) ++node.probe_a;
  if (partner_value == Value::B) ++node.probe_b;
}

std::optional<Value> termination_decide(NodeState& node, const ProtocolParams& params) {
  if (node.endf || node.probe_seen != params.psi) return std::nullopt;
  Value decided;
  if (node.probe_b <= params.sigma1 && node.probe_a >= params.sigma2) {
    decided = Value::A;
  } else if (node.probe_a <= params.sigma1 && node.probe_b >= params.sigma2) {
    decided = Value::B;
  } else {
    return std::nullopt;
  }
  node.value = decided;
  node.endf = true;
  node.decided_phase = node.phases;
  return decided;
}

void propagate_failure(NodeState& node, bool partner_failed) noexcept {
  if (partner_failed) node.failf = true;
}

NodeView present(const NodeState& s, const ProtocolParams& params) noexcept {
  NodeView v;
  v.value = s.value;
  v.saved = s.saved;
  v.endf = s.endf;
  v.nonempty_at_phase_start = s.nonempty_at_phase_start;
  v.cloned_this_phase = s.cloned_this_phase;
  v.subphase = subphase_of(s.counter, params.phase_length);
  v.phases = s.phases;
  return v;
}

const char* check_node_invariants(const NodeState& node, const ProtocolParams& params) noexcept {
  if (node.counter >= params.phase_length) return "counter outside [0, D)";
  if (node.endf && !is_set(node.value)) return "decided node holds the empty value";
  if (node.probe_a + node.probe_b > node.probe_seen) return "probe tallies exceed probes seen";
  if (node.probe_seen > params.psi) return "more than psi probes";
  if (node.phases < node.phase_base) return "phase below run base";
  return nullptr;
}

}  // namespace bpp
