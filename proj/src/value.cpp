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

#include "ctvp/value.hpp"

namespace ctvp {

std::string value_to_display(const Value& v) {
    if (is_int(v)) return std::to_string(as_int(v));
    if (is_bool(v)) return as_bool(v) ? "True" : "False";
    return as_str(v);
}

}  // namespace ctvp
