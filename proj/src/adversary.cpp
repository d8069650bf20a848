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

#include "bpp/adversary.hpp"

#include <fmt/format.h>

namespace bpp {

namespace {

Value coin_value(Rng& rng) { return (rng() >> 63) ? Value::A : Value::B; }

void mark(std::vector<std::uint8_t>& touched, NodeId id) {
  if (touched.size() <= id) touched.resize(static_cast<std::size_t>(id) + 1, 0);
}

/// True iff neither endpoint has been seen before; marks both.
bool first_dual(std::vector<std::uint8_t>& touched, ExchangePair p) {
  mark(touched, p.v);
  const bool fresh = !touched[p.u] && !touched[p.v];
  touched[p.u] = touched[p.v] = 1;
  return fresh;
}

}  // namespace

std::string_view to_string(AdversaryClass c) noexcept {
  switch (c) {
    case AdversaryClass::FullDynamic: return "full-dynamic";
    case AdversaryClass::WeakDynamic: return "weak-dynamic";
    case AdversaryClass::WeakContentOblivious: return "weak-content-oblivious";
    case AdversaryClass::FullStatic: return "full-static";
    case AdversaryClass::WeakStatic: return "weak-static";
  }
  return "?";
}

std::vector<Corruption> StaticFlip::corrupt_at_start(const FullView& view) {
  const Tally t = view.state->honest_tally();
  const Value majority = t.a >= t.b ? Value::A : Value::B;
  std::vector<Corruption> out;
  std::uint32_t budget = view.state->corruption_budget();
  for (NodeId id = 0; id < view.state->size() && budget > 0; ++id) {
    const NodeSummary s = view.state->summary(id);
    if (s.faulty || s.input != majority) continue;
    out.push_back({id, Behaviour::Mimic, opposite(majority)});
    --budget;
  }
  return out;
}

std::vector<Corruption> WeakFirstDual::corrupt_after(const ResultView& view) {
  if (!target_) target_ = coin_value(rng_);
  if (!first_dual(touched_, view.exchange.pair)) return {};
  const Value prey = opposite(*target_);
  if (view.u_after.faulty || view.v_after.faulty) return {};
  if (view.u_after.preference != prey || view.v_after.preference != prey) return {};
  ++first_dual_matches_;
  if (view.exchange.corruption_budget < 2) return {};
  ++captured_;
  return {{view.exchange.pair.u, Behaviour::Mimic, *target_},
          {view.exchange.pair.v, Behaviour::Mimic, *target_}};
}

std::vector<Corruption> ObliviousFirstDual::corrupt_after(const PairView& view) {
  if (!target_) target_ = coin_value(rng_);
  if (!first_dual(touched_, view.pair) || view.corruption_budget < 2) return {};
  ++captured_;
  return {{view.pair.u, Behaviour::Mimic, *target_}, {view.pair.v, Behaviour::Mimic, *target_}};
}

std::vector<Corruption> FullDynamicBooster::corrupt_before(const FullView& view) {
  if (done_) return {};
  done_ = true;
  const Tally t = view.state->honest_tally();
  const Value majority = t.a >= t.b ? Value::A : Value::B;
  minority_ = opposite(majority);
  std::vector<Corruption> out;
  std::uint32_t budget = view.state->corruption_budget();
  for (NodeId id = 0; id < view.state->size() && budget > 0; ++id) {
    const NodeSummary s = view.state->summary(id);
    if (s.faulty || s.preference != majority) continue;
    out.push_back({id, Behaviour::Boost, minority_});
    --budget;
  }
  return out;
}

std::unique_ptr<Strategy> make_strategy(std::string_view name, std::optional<Value> target) {
  if (name == "none") return std::make_unique<NoAdversary>();
  if (name == "static-flip") return std::make_unique<StaticFlip>();
  if (name == "weak-first-dual") return std::make_unique<WeakFirstDual>(target);
  if (name == "oblivious-first-dual") return std::make_unique<ObliviousFirstDual>(target);
  if (name == "full-booster") return std::make_unique<FullDynamicBooster>();
  throw ConfigError(fmt::format("unknown adversary '{}'", name));
}

std::vector<std::string> strategy_names() {
  return {"none", "static-flip", "weak-first-dual", "oblivious-first-dual", "full-booster"};
}

}  // namespace bpp
