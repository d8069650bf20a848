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
#include <vector>

#include "bpp/node_state.hpp"

namespace bpp {

using NodeId = std::uint32_t;

struct Tally {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t empty = 0;
  std::uint32_t decided_a = 0;
  std::uint32_t decided_b = 0;

  std::uint32_t honest() const noexcept { return a + b + empty; }
  friend bool operator==(const Tally&, const Tally&) = default;
};

/// The n node states plus the faulty set. States of faulty nodes are not
/// meaningful to the honest tally.
class Population {
 public:
  Population() = default;
  Population(std::vector<NodeState> states, std::uint32_t fault_budget);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(states_.size()); }
  const std::vector<NodeState>& states() const noexcept { return states_; }
  std::vector<NodeState>& states() noexcept { return states_; }
  const NodeState& operator[](NodeId id) const { return states_.at(id); }
  NodeState& operator[](NodeId id) { return states_.at(id); }

  bool is_faulty(NodeId id) const { return faulty_.at(id) != 0; }
  std::uint32_t faulty_count() const noexcept { return faulty_count_; }
  std::uint32_t corruption_budget() const noexcept { return budget_; }
  /// f: corruptions already made plus those still allowed.
  std::uint32_t fault_bound() const noexcept { return faulty_count_ + budget_; }
  std::vector<NodeId> faulty_ids() const;

  void set_corruption_budget(std::uint32_t f) noexcept { budget_ = f - faulty_count_; }

  /// Moves `id` into the faulty set. Throws std::logic_error when the node
  /// is already faulty, out of range, or the budget is spent.
  void corrupt(NodeId id);

 private:
  std::vector<NodeState> states_;
  std::vector<std::uint8_t> faulty_;
  std::uint32_t faulty_count_ = 0;
  std::uint32_t budget_ = 0;
};

/// First `a` nodes get A, the next `b` get B; all other fields zeroed.
/// Throws ConfigError unless a + b == n.
Population build_initial(std::uint32_t n, std::uint32_t a, std::uint32_t b,
                         std::uint32_t fault_budget = 0);

/// Counts over honest nodes only.
Tally tally(const Population& pop);

}  // namespace bpp
