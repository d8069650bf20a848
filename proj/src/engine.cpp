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

#include "bpp/engine.hpp"

#include <cmath>
#include <fstream>
#include <fmt/format.h>

#include "bpp/simulation.hpp"

namespace bpp {

namespace {

void dump(const std::vector<ExchangeRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write trace file '{}'", path));
  for (const ExchangeRecord& r : records) out << format_record(r) << '\n';
}

template <class M>
RunResult execute(M machine, Protocol protocol, const ProtocolParams& params,
                  const Population& initial, Strategy& strategy, std::uint64_t seed,
                  std::uint64_t max_exchanges, const RunOptions& options) {
  Simulation<M> sim(machine, params, initial, strategy, seed, options);
  try {
    sim.run(max_exchanges);
  } catch (const InvariantViolation&) {
    if (!options.trace_path.empty()) dump(sim.trace(), options.trace_path);
    throw;
  }
  RunResult r = sim.result(protocol);
  for (const NodeState& s : initial.states()) {
    if (s.value == Value::A) ++r.a;
    if (s.value == Value::B) ++r.b;
  }
  const bool full = options.trace == TraceMode::Full;
  const bool failed = options.trace == TraceMode::OnFailure && r.outcome == Outcome::Mixed;
  if (full || failed) {
    std::vector<ExchangeRecord> records =
        full && options.trace_sink ? *options.trace_sink : sim.trace();
    if (failed && options.trace_sink) *options.trace_sink = records;
    if (!options.trace_path.empty()) dump(records, options.trace_path);
  }
  return r;
}

}  // namespace

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::Acpd: return "acpd";
    case Protocol::Scfd: return "scfd";
    case Protocol::ScfdTerminationFirst: return "scfd-tf";
    case Protocol::Combined: return "combined";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(std::string_view text) noexcept {
  if (text == "acpd") return Protocol::Acpd;
  if (text == "scfd") return Protocol::Scfd;
  if (text == "scfd-tf") return Protocol::ScfdTerminationFirst;
  if (text == "combined") return Protocol::Combined;
  return std::nullopt;
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::DecidedA: return "decided-A";
    case Outcome::DecidedB: return "decided-B";
    case Outcome::Mixed: return "mixed";
    case Outcome::Failed: return "failed";
    case Outcome::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::optional<TraceMode> parse_trace_mode(std::string_view text) noexcept {
  if (text == "off") return TraceMode::Off;
  if (text == "on-failure") return TraceMode::OnFailure;
  if (text == "full") return TraceMode::Full;
  return std::nullopt;
}

std::string format_record(const ExchangeRecord& r) {
  auto role = [](bool faulty) { return faulty ? 'F' : 'H'; };
  return fmt::format("{} ({},{}) {}{} {:016x} {}->{} {}->{} {} {}", r.index, r.pair.u, r.pair.v,
                     role(r.u_faulty), role(r.v_faulty), r.view_digest, to_string(r.u_before),
                     to_string(r.u_after), to_string(r.v_before), to_string(r.v_after),
                     static_cast<int>(r.u_effect), static_cast<int>(r.v_effect));
}

std::uint64_t default_max_exchanges(Protocol protocol, const ProtocolParams& params) {
  const double n = params.n;
  const double ln = std::log(n);
  const double lifetime = 8.0 * n * ln * ln * ln;
  const double half = n / 2.0;
  const double all_phases = 1.25 * (params.phases_limit + 1.0) * params.phase_length * half;
  const double single = std::max(lifetime, all_phases);
  if (protocol != Protocol::Combined) return static_cast<std::uint64_t>(std::ceil(single));
  const double prologue = 1.25 * params.z0_probe_length * half;
  return static_cast<std::uint64_t>(std::ceil(3.0 * single + prologue));
}

RunResult run(Protocol protocol, const ProtocolParams& params, const Population& initial,
              Strategy& strategy, std::uint64_t seed, std::uint64_t max_exchanges,
              const RunOptions& options) {
  params.validate();
  if (initial.size() != params.n)
    throw ConfigError(fmt::format("population has {} nodes but parameters are for n = {}",
                                  initial.size(), params.n));
  switch (protocol) {
    case Protocol::Acpd:
      return execute(AcpdMachine{PhaseSchedule::AcpdCycle, &params}, protocol, params, initial,
                     strategy, seed, max_exchanges, options);
    case Protocol::Scfd:
      return execute(ScfdMachine{PhaseSchedule::ScfdCycle, &params}, protocol, params, initial,
                     strategy, seed, max_exchanges, options);
    case Protocol::ScfdTerminationFirst:
      return execute(ScfdMachine{PhaseSchedule::ScfdTerminationFirst, &params}, protocol, params,
                     initial, strategy, seed, max_exchanges, options);
    case Protocol::Combined:
      return execute(CombinedMachine{&params}, protocol, params, initial, strategy, seed,
                     max_exchanges, options);
  }
  throw ConfigError("unknown protocol");
}

}  // namespace bpp
