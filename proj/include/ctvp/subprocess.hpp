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

#ifndef CTVP_SUBPROCESS_HPP
#define CTVP_SUBPROCESS_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>

#include "ctvp/predictor.hpp"

namespace ctvp {

// Line-oriented client for a persistent child process: one request line in,
// one response line out. The child is spawned lazily through /bin/sh and
// killed on timeout or protocol failure; the next request respawns it.
class LineProcessClient {
  public:
    explicit LineProcessClient(std::string command, int timeout_ms = 30000);
    ~LineProcessClient();

    LineProcessClient(const LineProcessClient&) = delete;
    LineProcessClient& operator=(const LineProcessClient&) = delete;

    // Sends `line` (a trailing newline is appended) and reads one line back.
    // Returns nullopt on spawn failure, write failure, EOF, or timeout.
    std::optional<std::string> request(const std::string& line);

    const std::string& command() const { return command_; }

  private:
    bool ensure_spawned();
    void shutdown();
    std::optional<std::string> read_line_deadline(std::int64_t deadline_ms);

    std::string command_;
    int timeout_ms_;
    std::mutex mu_;
    int child_pid_ = -1;
    int to_child_ = -1;    // write end
    int from_child_ = -1;  // read end
    std::string buffer_;
};

// Predictor that delegates trace prediction to an external worker speaking
// line-delimited JSON on stdin/stdout.
//
// Request:  {"id": u64, "prompt": "Simulate executing this Python program
//            step-by-step. Your trace:", "program": "<source>",
//            "max_steps": u32}
// Response: {"id": u64, "valid": bool,
//            "steps": [{"line": u32, "env": {"name": value}}],
//            "final_output": "text"}
//
// Any transport or decode failure yields an invalid trace.
class ExternalSubprocessPredictor : public Predictor {
  public:
    explicit ExternalSubprocessPredictor(std::string command, int timeout_ms = 30000,
                                         std::size_t max_steps = kDefaultMaxSteps);

    std::string id() const override;
    ExecutionTrace predict(const Program& p) override;

  private:
    LineProcessClient client_;
    std::size_t max_steps_;
    std::uint64_t next_id_ = 1;
    std::mutex mu_;
};

extern const char* kTracePromptText;

}  // namespace ctvp

#endif  // CTVP_SUBPROCESS_HPP
