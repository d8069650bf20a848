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

#include "bpp/value.hpp"

namespace bpp {

std::optional<Value> parse_value(std::string_view text) noexcept {
  if (text == "A" || text == "a") return Value::A;
  if (text == "B" || text == "b") return Value::B;
  if (text == "⊥" || text == "-") return Value::Empty;
  return std::nullopt;
}

}  // namespace bpp
