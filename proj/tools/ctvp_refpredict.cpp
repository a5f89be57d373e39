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

// Reference trace worker speaking the line-delimited JSON predictor
// protocol on stdin/stdout. Useful as a working external predictor and as
// the integration-test peer for the subprocess transport.

#include <iostream>
#include <string>

#include <json.hpp>

#include "ctvp/program.hpp"
#include "ctvp/trace.hpp"
#include "ctvp/value.hpp"

namespace {

nlohmann::json env_to_json(const ctvp::Env& env) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : env) {
        if (ctvp::is_int(value)) {
            j[name] = ctvp::as_int(value);
        } else if (ctvp::is_bool(value)) {
            j[name] = ctvp::as_bool(value);
        } else {
            j[name] = ctvp::as_str(value);
        }
    }
    return j;
}

}  // namespace

int main() {
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        nlohmann::json request = nlohmann::json::parse(line, nullptr, false);
        nlohmann::json response;
        response["id"] = request.is_discarded() ? 0 : request.value("id", 0ULL);
        response["valid"] = false;
        response["steps"] = nlohmann::json::array();
        response["final_output"] = "";

        if (!request.is_discarded() && request.contains("program")) {
            std::size_t max_steps = request.value("max_steps", 10000U);
            ctvp::ParseResult parsed =
                ctvp::parse_program(request["program"].get<std::string>());
            if (parsed.ok() && max_steps > 0) {
                ctvp::ExecutionTrace trace = ctvp::interpret(parsed.value(), max_steps);
                response["valid"] = trace.valid;
                response["final_output"] = trace.final_output;
                for (const auto& step : trace.steps) {
                    response["steps"].push_back(
                        {{"line", step.line}, {"env", env_to_json(step.env)}});
                }
            }
        }
        std::cout << response.dump() << "\n" << std::flush;
    }
    return 0;
}
