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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpp/adversary.hpp"
#include "bpp/params.hpp"
#include "bpp/phase.hpp"
#include "bpp/population.hpp"
#include "bpp/scheduler.hpp"

namespace bpp {

enum class Protocol : std::uint8_t { Acpd, Scfd, ScfdTerminationFirst, Combined };

std::string_view to_string(Protocol p) noexcept;
/// "acpd", "scfd", "scfd-tf", "combined".
std::optional<Protocol> parse_protocol(std::string_view text) noexcept;

enum class Outcome : std::uint8_t { DecidedA, DecidedB, Mixed, Failed, BudgetExhausted };

std::string_view to_string(Outcome o) noexcept;

/// Tallies and events of one phase index, aggregated over nodes. Entry
/// counts are the values nodes held when they entered the phase; events
/// are attributed to the phase of the acting node.
struct PhaseStats {
  std::uint32_t phase = 0;
  PhaseKind kind = PhaseKind::Cancellation;
  std::uint32_t entered = 0;
  std::uint32_t entry_a = 0;
  std::uint32_t entry_b = 0;
  std::uint32_t entry_empty = 0;
  std::uint32_t cancelled_a = 0;
  std::uint32_t cancelled_b = 0;
  std::uint32_t adopted_a = 0;
  std::uint32_t adopted_b = 0;
  std::uint32_t decided_a = 0;
  std::uint32_t decided_b = 0;
  std::uint64_t first_exchange = 0;  // first exchange with a participant in this phase
  std::uint64_t last_exchange = 0;   // last such exchange
};

/// Decision-path counters of the combined protocol, over honest nodes.
struct CombinedSummary {
  std::uint32_t z0_one = 0;
  std::uint32_t x_path = 0;       // answered x1 (z0 = 1, or x2 = x3)
  std::uint32_t y_path = 0;       // answered y1
  std::uint32_t x_all_equal = 0;  // x1 = x2 = x3, all set
  std::uint32_t x2_ne_x3 = 0;
  std::uint32_t slot_failures = 0;
};

struct RunResult {
  Protocol protocol = Protocol::Acpd;
  std::string profile;
  std::uint32_t n = 0;
  std::uint32_t f = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::BudgetExhausted;
  std::uint64_t decision_exchange = 0;  // exchange of the last honest decision
  double parallel_time = 0.0;           // decision_exchange / n, or exchanges_total / n if undecided
  std::uint64_t exchanges_total = 0;
  Tally final_tally;
  std::vector<PhaseStats> per_phase;
  std::uint64_t drift_max = 0;               // max observed gap of lifetime counters
  std::uint64_t honest_faulty_exchanges = 0;
  std::uint64_t cancellation_imbalance = 0;  // exchanges whose cancellations removed unequal A/B
  bool fault_bound_exceeded = false;         // f > n / c_f
  CombinedSummary combined;
};

/// One exchange, as recorded in a trace.
struct ExchangeRecord {
  std::uint64_t index = 0;
  ExchangePair pair;
  bool u_faulty = false;
  bool v_faulty = false;
  std::uint64_t view_digest = 0;  // hash of both presented views
  Value u_before = Value::Empty;
  Value u_after = Value::Empty;
  Value v_before = Value::Empty;
  Value v_after = Value::Empty;
  EffectKind u_effect = EffectKind::None;
  EffectKind v_effect = EffectKind::None;
  friend bool operator==(const ExchangeRecord&, const ExchangeRecord&) = default;
};

std::string format_record(const ExchangeRecord& r);

enum class TraceMode : std::uint8_t { Off, OnFailure, Full };

std::optional<TraceMode> parse_trace_mode(std::string_view text) noexcept;

struct RunOptions {
  TraceMode trace = TraceMode::Off;
  std::size_t trace_capacity = 4096;  // ring size for OnFailure
  std::string trace_path;             // dump target; empty keeps records in memory only
  bool check_invariants = false;      // per-exchange debug assertions
  /// When set, receives the trace records (Full: all; OnFailure: the ring
  /// on Mixed or invariant failure).
  std::vector<ExchangeRecord>* trace_sink = nullptr;
};

/// Thrown by check_invariants runs when an assertion fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// ceil(8 n ln^3 n), or enough exchanges for every node to pass
/// phases_limit (x 1.25) when that is larger; the combined protocol gets
/// three runs plus its prologue.
std::uint64_t default_max_exchanges(Protocol protocol, const ProtocolParams& params);

/// Executes one run until every honest node decided, an honest node
/// failed, or max_exchanges were executed. `strategy` is seeded from
/// `seed` on a separate stream. Corruptions are bounded by the
/// population's budget.
RunResult run(Protocol protocol, const ProtocolParams& params, const Population& initial,
              Strategy& strategy, std::uint64_t seed, std::uint64_t max_exchanges,
              const RunOptions& options = {});

}  // namespace bpp
