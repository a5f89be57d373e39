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

#include "ctvp/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>

#include <json.hpp>

namespace ctvp {

const char* kTracePromptText = "Simulate executing this Python program step-by-step. Your trace:";

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

LineProcessClient::LineProcessClient(std::string command, int timeout_ms)
    : command_(std::move(command)), timeout_ms_(timeout_ms) {}

LineProcessClient::~LineProcessClient() { shutdown(); }

bool LineProcessClient::ensure_spawned() {
    if (child_pid_ > 0) return true;
    int in_pipe[2];   // parent -> child
    int out_pipe[2];  // child -> parent
    if (pipe(in_pipe) != 0) return false;
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        return false;
    }
    pid_t pid = fork();
    if (pid < 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        return false;
    }
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    child_pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    buffer_.clear();
    // Writes to a dead child must surface as errors, not SIGPIPE.
    signal(SIGPIPE, SIG_IGN);
    return true;
}

void LineProcessClient::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = -1;
    from_child_ = -1;
    if (child_pid_ > 0) {
        kill(child_pid_, SIGKILL);
        int status = 0;
        waitpid(child_pid_, &status, 0);
        child_pid_ = -1;
    }
    buffer_.clear();
}

std::optional<std::string> LineProcessClient::read_line_deadline(std::int64_t deadline_ms) {
    for (;;) {
        std::size_t nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        std::int64_t remaining = deadline_ms - now_ms();
        if (remaining <= 0) return std::nullopt;
        pollfd pfd{from_child_, POLLIN, 0};
        int rc = poll(&pfd, 1, static_cast<int>(remaining));
        if (rc <= 0) return std::nullopt;  // timeout or poll error
        char chunk[4096];
        ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n <= 0) return std::nullopt;  // EOF or error
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

std::optional<std::string> LineProcessClient::request(const std::string& line) {
    std::lock_guard<std::mutex> lk(mu_);
    if (!ensure_spawned()) return std::nullopt;

    std::string payload = line + "\n";
    std::size_t written = 0;
    while (written < payload.size()) {
        ssize_t n = write(to_child_, payload.data() + written, payload.size() - written);
        if (n <= 0) {
            shutdown();
            return std::nullopt;
        }
        written += static_cast<std::size_t>(n);
    }

    std::optional<std::string> response = read_line_deadline(now_ms() + timeout_ms_);
    if (!response) shutdown();
    return response;
}

ExternalSubprocessPredictor::ExternalSubprocessPredictor(std::string command, int timeout_ms,
                                                         std::size_t max_steps)
    : client_(std::move(command), timeout_ms), max_steps_(max_steps) {}

std::string ExternalSubprocessPredictor::id() const {
    return "external:" + client_.command() + ":max_steps=" + std::to_string(max_steps_);
}

ExecutionTrace ExternalSubprocessPredictor::predict(const Program& p) {
    auto invalid = [](const std::string& why) {
        ExecutionTrace t;
        t.valid = false;
        t.error = why;
        return t;
    };

    std::uint64_t request_id;
    {
        std::lock_guard<std::mutex> lk(mu_);
        request_id = next_id_++;
    }

    nlohmann::json request = {
        {"id", request_id},
        {"prompt", kTracePromptText},
        {"program", p.source},
        {"max_steps", static_cast<std::uint32_t>(max_steps_)},
    };

    // request() holds the client lock across write+read, so request/response
    // pairs never interleave and the ids must match.
    std::optional<std::string> line = client_.request(request.dump());
    if (line) {
        nlohmann::json response = nlohmann::json::parse(*line, nullptr, false);
        if (response.is_discarded()) return invalid("malformed response JSON");
        if (!response.contains("id") || !response["id"].is_number_unsigned() ||
            response["id"].get<std::uint64_t>() != request_id) {
            return invalid("response id mismatch");
        }
        try {
            ExecutionTrace t;
            t.valid = response.value("valid", false);
            t.final_output = response.value("final_output", std::string{});
            if (response.contains("steps")) {
                for (const auto& step : response["steps"]) {
                    TraceStep s;
                    s.line = step.at("line").get<int>();
                    for (const auto& [name, v] : step.at("env").items()) {
                        if (v.is_number_integer()) {
                            s.env[name] = v.get<std::int64_t>();
                        } else if (v.is_boolean()) {
                            s.env[name] = v.get<bool>();
                        } else if (v.is_string()) {
                            s.env[name] = v.get<std::string>();
                        } else {
                            return invalid("unsupported env value type");
                        }
                    }
                    t.steps.push_back(std::move(s));
                }
            }
            if (!t.valid && t.error.empty()) t.error = "predictor reported invalid trace";
            return t;
        } catch (const nlohmann::json::exception& e) {
            return invalid(std::string("response decode failed: ") + e.what());
        }
    }
    return invalid("subprocess transport failure or timeout");
}

}  // namespace ctvp
