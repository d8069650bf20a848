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
#include <stdexcept>
#include <string_view>

namespace bpp {

/// A node's preference. Empty is the blank value produced by cancellation.
enum class Value : std::uint8_t { A, B, Empty };

/// Thrown for operations that have no meaning on the given value.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a run or experiment is configured inconsistently.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr bool is_set(Value v) noexcept { return v != Value::Empty; }

/// The other non-empty value. Throws DomainError on Empty.
inline Value opposite(Value v) {
  switch (v) {
    case Value::A: return Value::B;
    case Value::B: return Value::A;
    case Value::Empty: break;
  }
  throw DomainError("opposite() is undefined for the empty value");
}

/// True iff both values are set and differ.
constexpr bool are_opposite(Value x, Value y) noexcept {
  return (x == Value::A && y == Value::B) || (x == Value::B && y == Value::A);
}

/// Trace rendering; Empty prints as "⊥".
constexpr std::string_view to_string(Value v) noexcept {
  switch (v) {
    case Value::A: return "A";
    case Value::B: return "B";
    case Value::Empty: return "⊥";
  }
  return "?";
}

/// Accepts "A", "B", "a", "b", "⊥" and "-" (empty).
std::optional<Value> parse_value(std::string_view text) noexcept;

}  // namespace bpp
