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

#include "bpp/scfd.hpp"

namespace bpp {

Effect Scfd::act(NodeState& self, const NodeView& partner, const ProtocolParams& params) {
  if (self.endf || self.failf || self.halted || partner.phases != self.phases) return {};
  const bool self_mid = subphase_of(self.counter, params.phase_length) == 1;
  const bool partner_mid = partner.subphase == 1;
  switch (self.kind) {
    case PhaseKind::Cancellation:
      if ((self_mid || partner_mid) && !partner.endf && are_opposite(self.value, partner.value)) {
        const Value lost = self.value;
        self.value = Value::Empty;
        return {EffectKind::Cancelled, lost};
      }
      return {};
    case PhaseKind::Termination:
      if (!self_mid || self.probe_seen >= params.psi) return {};
      termination_probe(self, partner.value, params);
      if (auto d = termination_decide(self, params)) return {EffectKind::Decided, *d};
      return {EffectKind::Probed, partner.value};
    case PhaseKind::Duplication:
      if (self.value == Value::Empty) {
        if (partner_mid && is_set(partner.value) && !partner.endf &&
            partner.nonempty_at_phase_start && !partner.cloned_this_phase) {
          self.value = partner.value;
          return {EffectKind::Adopted, self.value};
        }
      } else if (self_mid && partner.value == Value::Empty && self.nonempty_at_phase_start &&
                 !self.cloned_this_phase) {
        self.cloned_this_phase = true;
        return {EffectKind::Cloned, self.value};
      }
      return {};
  }
  return {};
}

NodeState scfd_transition(NodeState self, const NodeView& partner, const ProtocolParams& params,
                          PhaseSchedule schedule, Effect* effect) {
  Effect e;
  if (!self.failf && !self.halted) {
    propagate_failure(self, partner.failf);
    if (!self.failf) {
      advance_counter(self, params, schedule);
      e = Scfd::act(self, partner, params);
    }
  }
  if (effect) *effect = e;
  return self;
}

}  // namespace bpp
