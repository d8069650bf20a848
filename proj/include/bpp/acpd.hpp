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

#include "bpp/phase.hpp"

namespace bpp {

/// Asymmetric cancellation, partial duplication. Each endpoint writes only
/// itself; a node gets one cancellation attempt and one duplication
/// attempt per phase, spent on its first aligned exchange of subphase 1.
struct Acpd {
  static constexpr PhaseSchedule kSchedule = PhaseSchedule::AcpdCycle;

  /// Action rules on an advanced state against the partner's view.
  static Effect act(NodeState& self, const NodeView& partner, const ProtocolParams& params);
};

/// Full per-endpoint transition: failure propagation, counter advance,
/// then the action rules. `partner` is the partner's advanced view.
NodeState acpd_transition(NodeState self, const NodeView& partner, const ProtocolParams& params,
                          Effect* effect = nullptr);

}  // namespace bpp
