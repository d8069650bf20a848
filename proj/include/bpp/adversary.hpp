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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpp/population.hpp"
#include "bpp/scheduler.hpp"

namespace bpp {

enum class AdversaryClass : std::uint8_t {
  FullDynamic,
  WeakDynamic,
  WeakContentOblivious,
  FullStatic,
  WeakStatic,
};

std::string_view to_string(AdversaryClass c) noexcept;

/// How a corrupted node behaves from then on.
enum class Behaviour : std::uint8_t {
  Mimic,  // runs the honest machine as if its input were `as_value`
  Boost,  // presents forged, phase-aligned views supporting a value
};

struct Corruption {
  NodeId node = 0;
  Behaviour behaviour = Behaviour::Mimic;
  Value as_value = Value::B;
};

/// What the adversary may learn about one node.
struct NodeSummary {
  Value preference = Value::Empty;
  Value input = Value::Empty;
  bool decided = false;
  bool faulty = false;
  std::uint16_t phase = 0;
  std::uint64_t exchanges = 0;
};

/// Read access to the whole configuration. Only handed to Full classes.
class StateOracle {
 public:
  virtual ~StateOracle() = default;
  virtual std::uint32_t size() const = 0;
  virtual NodeSummary summary(NodeId id) const = 0;
  virtual Tally honest_tally() const = 0;
  virtual std::uint32_t corruption_budget() const = 0;
};

/// Content-oblivious view: only which nodes meet.
struct PairView {
  std::uint64_t index = 0;  // 1-based exchange index
  ExchangePair pair;
  std::uint32_t corruption_budget = 0;
};

/// Weak view: the pair plus the states the exchange produced.
struct ResultView {
  PairView exchange;
  NodeSummary u_after;
  NodeSummary v_after;
};

/// Full view: everything, including the exchange about to happen.
struct FullView {
  PairView upcoming;
  const StateOracle* state = nullptr;
};

/// Blind start-of-run view for the Weak static class.
struct StartView {
  std::uint32_t n = 0;
  std::uint32_t corruption_budget = 0;
};

/// A corruption strategy. The engine calls only the hooks its class may
/// observe:
///   FullStatic            corrupt_at_start(FullView)
///   WeakStatic            corrupt_at_start(StartView)
///   FullDynamic           corrupt_before(FullView) before every exchange
///   WeakDynamic           corrupt_after(ResultView) after every exchange
///   WeakContentOblivious  corrupt_after(PairView) after every exchange
/// supported_value() is queried for Boost nodes each time they present.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string_view name() const = 0;
  virtual AdversaryClass adversary_class() const = 0;

  virtual std::vector<Corruption> corrupt_at_start(const FullView&) { return {}; }
  virtual std::vector<Corruption> corrupt_at_start(const StartView&) { return {}; }
  virtual std::vector<Corruption> corrupt_before(const FullView&) { return {}; }
  virtual std::vector<Corruption> corrupt_after(const ResultView&) { return {}; }
  virtual std::vector<Corruption> corrupt_after(const PairView&) { return {}; }
  virtual Value supported_value() const { return Value::B; }

  /// Private randomness, seeded apart from the scheduler.
  void seed(std::uint64_t s) { rng_.seed(s); }

 protected:
  Rng rng_{0};
};

/// Never corrupts.
class NoAdversary final : public Strategy {
 public:
  std::string_view name() const override { return "none"; }
  AdversaryClass adversary_class() const override { return AdversaryClass::WeakStatic; }
};

/// Full static: before exchange 1, corrupts f holders of the majority input
/// and has them run the honest machine with the minority input.
class StaticFlip final : public Strategy {
 public:
  std::string_view name() const override { return "static-flip"; }
  AdversaryClass adversary_class() const override { return AdversaryClass::FullStatic; }
  std::vector<Corruption> corrupt_at_start(const FullView& view) override;
};

/// Weak dynamic: captures first-dual exchanges (first exchange of both
/// endpoints) whose resulting values are both opposite(target), turning
/// both endpoints into honest-looking `target` nodes. Without a fixed
/// target the value is guessed with a fair private coin at the first hook.
class WeakFirstDual final : public Strategy {
 public:
  explicit WeakFirstDual(std::optional<Value> target = std::nullopt) : target_(target) {}
  std::string_view name() const override { return "weak-first-dual"; }
  AdversaryClass adversary_class() const override { return AdversaryClass::WeakDynamic; }
  std::vector<Corruption> corrupt_after(const ResultView& view) override;

  std::uint32_t captured_pairs() const noexcept { return captured_; }
  std::uint32_t first_dual_seen() const noexcept { return first_dual_matches_; }

 private:
  std::optional<Value> target_;
  std::vector<std::uint8_t> touched_;
  std::uint32_t captured_ = 0;
  std::uint32_t first_dual_matches_ = 0;
};

/// Content-oblivious variant: captures every first-dual pair it sees,
/// values unknown.
class ObliviousFirstDual final : public Strategy {
 public:
  explicit ObliviousFirstDual(std::optional<Value> target = std::nullopt) : target_(target) {}
  std::string_view name() const override { return "oblivious-first-dual"; }
  AdversaryClass adversary_class() const override {
    return AdversaryClass::WeakContentOblivious;
  }
  std::vector<Corruption> corrupt_after(const PairView& view) override;

  std::uint32_t captured_pairs() const noexcept { return captured_; }

 private:
  std::optional<Value> target_;
  std::vector<std::uint8_t> touched_;
  std::uint32_t captured_ = 0;
};

/// Full dynamic: at the first exchange corrupts f holders of the current
/// honest majority and from then on presents phase-aligned forged views
/// that push the minority m fixed at that moment: saved = value = m,
/// undecided, in subphase 1, an eligible donor that never runs out.
class FullDynamicBooster final : public Strategy {
 public:
  std::string_view name() const override { return "full-booster"; }
  AdversaryClass adversary_class() const override { return AdversaryClass::FullDynamic; }
  std::vector<Corruption> corrupt_before(const FullView& view) override;
  Value supported_value() const override { return minority_; }

 private:
  bool done_ = false;
  Value minority_ = Value::B;
};

/// Builds a strategy from its CLI name. Throws ConfigError on unknown names.
std::unique_ptr<Strategy> make_strategy(std::string_view name,
                                        std::optional<Value> target = std::nullopt);

std::vector<std::string> strategy_names();

}  // namespace bpp
