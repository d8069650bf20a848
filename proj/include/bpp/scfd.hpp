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

/// Symmetric cancellation, full duplication.
///
/// Cancellation repeats for the whole phase: opposite values annihilate
/// whenever either endpoint is in subphase 1 and the partner is undecided.
/// Duplication is written per endpoint: the recipient copies an eligible
/// donor (undecided, non-empty at phase start, not yet cloned, in
/// subphase 1) and the donor marks itself cloned under the mirrored
/// condition, so the joint transition stays symmetric.
struct Scfd {
  static Effect act(NodeState& self, const NodeView& partner, const ProtocolParams& params);
};

NodeState scfd_transition(NodeState self, const NodeView& partner, const ProtocolParams& params,
                          PhaseSchedule schedule = PhaseSchedule::ScfdCycle,
                          Effect* effect = nullptr);

}  // namespace bpp
