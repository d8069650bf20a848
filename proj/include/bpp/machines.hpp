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

// Adapters giving the engine one interface over the three protocols.

#pragma once

#include <cstdint>

#include "bpp/acpd.hpp"
#include "bpp/combined.hpp"
#include "bpp/scfd.hpp"

namespace bpp {

namespace detail {

constexpr std::uint64_t digest_mix(std::uint64_t h, std::uint64_t x) noexcept {
  return (h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2))) * 0x100000001b3ULL;
}

constexpr std::uint64_t digest(const NodeView& v) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = digest_mix(h, static_cast<std::uint64_t>(v.value));
  h = digest_mix(h, static_cast<std::uint64_t>(v.saved));
  h = digest_mix(h, (v.endf ? 1u : 0u) | (v.failf ? 2u : 0u) | (v.nonempty_at_phase_start ? 4u : 0u) |
                        (v.cloned_this_phase ? 8u : 0u));
  h = digest_mix(h, v.subphase);
  return digest_mix(h, v.phases);
}

/// Forged view supporting `m`, aligned with the partner's phase.
constexpr NodeView supporting_view(const NodeView& partner, Value m) noexcept {
  NodeView f;
  f.value = m;
  f.saved = m;
  f.endf = false;
  f.failf = false;
  f.nonempty_at_phase_start = true;
  f.cloned_this_phase = false;
  f.subphase = 1;
  f.phases = partner.phases;
  return f;
}

}  // namespace detail

/// ACPD and SCFD share NodeState; `Rules` supplies the action rules.
template <class Rules>
struct NodeMachine {
  using State = NodeState;
  using View = NodeView;
  using FailSignal = bool;
  static constexpr bool kTracksPhases = true;

  PhaseSchedule schedule = PhaseSchedule::ScfdCycle;
  const ProtocolParams* params = nullptr;

  State initial(Value input, std::uint64_t /*coin_seed*/) const {
    return initial_state(input, schedule, params->gamma);
  }
  static FailSignal fail_signal(const State& s) noexcept { return s.failf; }
  static constexpr FailSignal no_failure() noexcept { return false; }

  PhaseEvent advance(State& s, FailSignal partner_failed) const {
    if (s.failf || s.halted) return {};
    propagate_failure(s, partner_failed);
    if (s.failf) return {};
    return advance_counter(s, *params, schedule);
  }
  View present(const State& advanced, FailSignal own_pre) const noexcept {
    View v = bpp::present(advanced, *params);
    v.failf = own_pre;
    return v;
  }
  Effect act(State& s, const View& partner) const { return Rules::act(s, partner, *params); }
  static View forge(const View& partner, Value m) noexcept {
    return detail::supporting_view(partner, m);
  }
  static std::uint64_t digest(const View& v) noexcept { return detail::digest(v); }

  static Value preference(const State& s) noexcept { return s.value; }
  static Value input(const State& s) noexcept { return s.value; }
  static bool decided(const State& s) noexcept { return s.endf; }
  static bool failed(const State& s) noexcept { return s.failf; }
  static std::uint16_t phase(const State& s) noexcept { return s.phases; }
  static void rewrite_input(State& s, Value v) noexcept { s.value = v; }
  const char* check(const State& s) const noexcept { return check_node_invariants(s, *params); }
};

using AcpdMachine = NodeMachine<Acpd>;
using ScfdMachine = NodeMachine<Scfd>;

struct CombinedMachine {
  using State = CombinedState;
  using View = CombinedView;
  using FailSignal = CombinedFailSignal;
  static constexpr bool kTracksPhases = false;

  const ProtocolParams* params = nullptr;

  State initial(Value input, std::uint64_t coin_seed) const {
    return Combined::initial(input, coin_seed);
  }
  static FailSignal fail_signal(const State& s) noexcept { return Combined::fail_signal(s); }
  static constexpr FailSignal no_failure() noexcept { return {}; }

  PhaseEvent advance(State& s, const FailSignal& partner) const {
    Combined::advance(s, partner, *params);
    return {};
  }
  View present(const State& advanced, const FailSignal& own_pre) const noexcept {
    return Combined::present(advanced, own_pre, *params);
  }
  Effect act(State& s, const View& partner) const { return Combined::act(s, partner, *params); }
  static View forge(const View& partner, Value m) noexcept {
    View f;
    f.run_index = partner.run_index;
    f.original_value = m;
    f.acpd = detail::supporting_view(partner.acpd, m);
    f.scfd = detail::supporting_view(partner.scfd, m);
    return f;
  }
  static std::uint64_t digest(const View& v) noexcept {
    std::uint64_t h = detail::digest_mix(detail::digest(v.acpd), detail::digest(v.scfd));
    h = detail::digest_mix(h, v.run_index);
    return detail::digest_mix(h, static_cast<std::uint64_t>(v.original_value));
  }

  /// Tallies count inputs; the final answer once decided.
  static Value preference(const State& s) noexcept { return s.endf ? s.decision : s.original_value; }
  static Value input(const State& s) noexcept { return s.original_value; }
  static bool decided(const State& s) noexcept { return s.endf; }
  static bool failed(const State& s) noexcept { return s.failf; }
  static std::uint16_t phase(const State& s) noexcept { return s.acpd.phases; }
  static void rewrite_input(State& s, Value v) noexcept {
    s.original_value = v;
    if (s.run_index != kPrologue && s.run_index != kRunsDone) {
      s.acpd.value = v;
      s.scfd.value = v;
    }
  }
  const char* check(const State& s) const noexcept {
    if (s.endf && !is_set(s.decision)) return "combined: decided without a value";
    if (const char* e = check_node_invariants(s.acpd, *params)) return e;
    return check_node_invariants(s.scfd, *params);
  }
};

}  // namespace bpp
