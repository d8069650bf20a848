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

#include "bpp/population.hpp"

#include <stdexcept>
#include <fmt/format.h>

namespace bpp {

Population::Population(std::vector<NodeState> states, std::uint32_t fault_budget)
    : states_(std::move(states)), faulty_(states_.size(), 0), budget_(fault_budget) {
  if (fault_budget > states_.size())
    throw ConfigError(fmt::format("fault budget {} exceeds population size {}", fault_budget,
                                  states_.size()));
}

std::vector<NodeId> Population::faulty_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(faulty_count_);
  for (NodeId i = 0; i < size(); ++i)
    if (faulty_[i]) ids.push_back(i);
  return ids;
}

void Population::corrupt(NodeId id) {
  if (id >= size()) throw std::logic_error(fmt::format("corrupt: node {} out of range", id));
  if (faulty_[id]) throw std::logic_error(fmt::format("corrupt: node {} already faulty", id));
  if (budget_ == 0) throw std::logic_error("corrupt: corruption budget exhausted");
  faulty_[id] = 1;
  ++faulty_count_;
  --budget_;
}

Population build_initial(std::uint32_t n, std::uint32_t a, std::uint32_t b,
                         std::uint32_t fault_budget) {
  if (static_cast<std::uint64_t>(a) + b != n)
    throw ConfigError(fmt::format("initial tallies a = {} and b = {} do not sum to n = {}", a, b, n));
  std::vector<NodeState> states(n);
  for (std::uint32_t i = 0; i < n; ++i) states[i].value = i < a ? Value::A : Value::B;
  return Population(std::move(states), fault_budget);
}

Tally tally(const Population& pop) {
  Tally t;
  for (NodeId i = 0; i < pop.size(); ++i) {
    if (pop.is_faulty(i)) continue;
    const NodeState& s = pop[i];
    switch (s.value) {
      case Value::A: ++t.a; break;
      case Value::B: ++t.b; break;
      case Value::Empty: ++t.empty; break;
    }
    if (s.endf) ++(s.value == Value::A ? t.decided_a : t.decided_b);
  }
  return t;
}

}  // namespace bpp
