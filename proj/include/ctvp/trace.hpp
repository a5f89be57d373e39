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

#ifndef CTVP_TRACE_HPP
#define CTVP_TRACE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctvp/program.hpp"
#include "ctvp/value.hpp"

namespace ctvp {

using Env = std::map<std::string, Value>;

// Variable state after one executed Assign or Print statement.
struct TraceStep {
    int line = 0;
    Env env;

    friend bool operator==(const TraceStep& a, const TraceStep& b) {
        return a.line == b.line && a.env == b.env;
    }
};

struct ExecutionTrace {
    std::vector<TraceStep> steps;
    std::string final_output;  // print lines joined with LF
    bool valid = true;
    std::string error;  // set when valid == false

    friend bool operator==(const ExecutionTrace& a, const ExecutionTrace& b) {
        return a.valid == b.valid && a.steps == b.steps && a.final_output == b.final_output &&
               a.error == b.error;
    }
};

inline constexpr std::size_t kDefaultMaxSteps = 10000;

// Exact small-step execution of the mini-language. One trace step is
// recorded per executed Assign or Print; control headers evaluate without
// emitting a step. The limit counts executed statements (loop headers
// included per iteration), so loops of non-recording statements still
// terminate. Faults (undefined variable, division by zero, type errors)
// and limit exhaustion produce valid == false instead of raising.
ExecutionTrace interpret(const Program& p, std::size_t max_steps = kDefaultMaxSteps);

// Rewrites a variant's trace into the original program's name space:
// env keys are mapped back through the variant's rename map, injected
// dead-code variables are dropped, and keys outside the original identifier
// set are dropped. A step whose raw-env delta touches only injected
// variables is removed when its projected env matches the previous step's,
// so dead-code insertion leaves honest traces step-aligned with the
// original. Invalid traces pass through untouched.
ExecutionTrace canonicalize_trace(
    const ExecutionTrace& trace,
    const std::vector<std::pair<std::string, std::string>>& rename_map,
    const std::vector<std::string>& injected_vars,
    const std::set<std::string>& original_ids);

}  // namespace ctvp

#endif  // CTVP_TRACE_HPP
