// Copyright 2026 The CTVP Project Authors
//
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

#ifndef CTVP_VALUE_HPP
#define CTVP_VALUE_HPP

#include <cstdint>
#include <string>
#include <variant>

namespace ctvp {

// Runtime value of the mini-language: 64-bit integer, boolean, or string.
using Value = std::variant<std::int64_t, bool, std::string>;

inline bool is_int(const Value& v) { return std::holds_alternative<std::int64_t>(v); }
inline bool is_bool(const Value& v) { return std::holds_alternative<bool>(v); }
inline bool is_str(const Value& v) { return std::holds_alternative<std::string>(v); }

inline std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v); }
inline bool as_bool(const Value& v) { return std::get<bool>(v); }
inline const std::string& as_str(const Value& v) { return std::get<std::string>(v); }

// Printed form: integers in decimal, booleans as True/False, strings raw.
std::string value_to_display(const Value& v);

}  // namespace ctvp

#endif  // CTVP_VALUE_HPP
