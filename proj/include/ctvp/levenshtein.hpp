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

#ifndef CTVP_LEVENSHTEIN_HPP
#define CTVP_LEVENSHTEIN_HPP

#include <cstddef>
#include <string_view>

namespace ctvp {

// Classic edit distance (unit-cost insert/delete/substitute), iterative
// two-row dynamic program, O(|a|*|b|) time and O(min) space.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace ctvp

#endif  // CTVP_LEVENSHTEIN_HPP
