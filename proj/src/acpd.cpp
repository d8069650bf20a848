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

#include "bpp/acpd.hpp"

namespace bpp {

namespace {

Effect terminate_step(NodeState& self, const NodeView& partner, const ProtocolParams& params) {
  if (self.probe_seen >= params.psi) return {};
  termination_probe(self, partner.value, params);
  if (auto d = termination_decide(self, params)) return {EffectKind::Decided, *d};
  return {EffectKind::Probed, partner.value};
}

}  // namespace

Effect Acpd::act(NodeState& self, const NodeView& partner, const ProtocolParams& params) {
  if (self.endf || self.failf || self.halted || partner.phases != self.phases) return {};
  if (subphase_of(self.counter, params.phase_length) != 1) return {};
  switch (self.kind) {
    case PhaseKind::Cancellation:
      if (self.cancelled_this_phase) return {};
      self.cancelled_this_phase = true;
      if (are_opposite(self.value, partner.saved)) {
        const Value lost = self.value;
        self.value = Value::Empty;
        return {EffectKind::Cancelled, lost};
      }
      return {};
    case PhaseKind::Termination:
      return terminate_step(self, partner, params);
    case PhaseKind::Duplication:
      if (self.adopted_this_phase) return {};
      self.adopted_this_phase = true;
      if (self.value == Value::Empty && is_set(partner.saved)) {
        self.value = partner.saved;
        return {EffectKind::Adopted, self.value};
      }
      return {};
  }
  return {};
}

NodeState acpd_transition(NodeState self, const NodeView& partner, const ProtocolParams& params,
                          Effect* effect) {
  Effect e;
  if (!self.failf && !self.halted) {
    propagate_failure(self, partner.failf);
    if (!self.failf) {
      advance_counter(self, params, Acpd::kSchedule);
      e = Acpd::act(self, partner, params);
    }
  }
  if (effect) *effect = e;
  return self;
}

}  // namespace bpp
