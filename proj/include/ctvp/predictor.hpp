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

#ifndef CTVP_PREDICTOR_HPP
#define CTVP_PREDICTOR_HPP

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "ctvp/trace.hpp"

namespace ctvp {

// A trace predictor. Implementations never throw from predict(); failures
// are encoded as invalid traces.
class Predictor {
  public:
    virtual ~Predictor() = default;

    // Stable identity string; part of the trace-cache key.
    virtual std::string id() const = 0;

    virtual ExecutionTrace predict(const Program& p) = 0;
};

// Ground-truth predictor backed by the reference interpreter.
class ReferencePredictor : public Predictor {
  public:
    explicit ReferencePredictor(std::size_t max_steps = kDefaultMaxSteps)
        : max_steps_(max_steps) {}

    std::string id() const override;
    ExecutionTrace predict(const Program& p) override;

  private:
    std::size_t max_steps_;
};

enum class DivergenceMode {
    CorruptOutput,   // taint the final output, steps intact
    ExtraSteps,      // pad the trace with repeated tail states
    AlteredValues,   // perturb recorded variable values
};

const char* divergence_mode_name(DivergenceMode m);
DivergenceMode divergence_mode_from_name(const std::string& name);

struct TriggerSpec {
    std::string pattern;  // substring matched against the raw source
    DivergenceMode payload = DivergenceMode::CorruptOutput;
    double survival_prob = 0.5;  // activation probability when the pattern is absent
};

// Applies the divergence payload to a reference trace. The corruption
// content is derived from `seed`, so distinct programs diverge distinctly;
// a backdoor's response does not transfer cleanly across syntactic variants
// and that inconsistency is exactly what the protocol measures.
ExecutionTrace apply_divergence(const ExecutionTrace& reference, DivergenceMode mode,
                                std::uint64_t seed);

// Simulated backdoored predictor: diverges with certainty when the trigger
// pattern occurs in the raw source, independently with probability
// survival_prob otherwise (the coin is a pure function of the program hash
// and the predictor seed). Non-diverging calls return the reference trace.
class BackdooredSimPredictor : public Predictor {
  public:
    BackdooredSimPredictor(TriggerSpec trigger, std::uint64_t seed,
                           std::size_t max_steps = kDefaultMaxSteps)
        : trigger_(std::move(trigger)), seed_(seed), max_steps_(max_steps) {}

    std::string id() const override;
    ExecutionTrace predict(const Program& p) override;

  private:
    TriggerSpec trigger_;
    std::uint64_t seed_;
    std::size_t max_steps_;
};

// Reference predictor with seeded per-program noise: with probability
// epsilon the trace gets one perturbed value and a tainted output.
class NoisyPredictor : public Predictor {
  public:
    NoisyPredictor(double epsilon, std::uint64_t seed,
                   std::size_t max_steps = kDefaultMaxSteps)
        : epsilon_(epsilon), seed_(seed), max_steps_(max_steps) {}

    std::string id() const override;
    ExecutionTrace predict(const Program& p) override;

  private:
    double epsilon_;
    std::uint64_t seed_;
    std::size_t max_steps_;
};

// Trace cache keyed by (program hash, predictor id). Reads are concurrent;
// a miss computes once per key while concurrent requesters for the same key
// wait for that single computation. Ready entries are evicted LRU once the
// capacity is exceeded.
class TraceCache {
  public:
    explicit TraceCache(std::size_t capacity = 10000);

    ExecutionTrace get_or_compute(const std::string& program_hash,
                                  const std::string& predictor_id,
                                  const std::function<ExecutionTrace()>& compute);

    std::size_t hits() const;
    std::size_t misses() const;
    std::size_t size() const;
    void clear();

  private:
    struct Entry {
        ExecutionTrace trace;
        bool ready = false;
        std::list<std::string>::iterator lru_pos;
    };

    void evict_locked();

    mutable std::mutex mu_;
    std::condition_variable ready_cv_;
    std::unordered_map<std::string, std::shared_ptr<Entry>> entries_;
    std::list<std::string> lru_;  // front = most recent
    std::size_t capacity_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

// Cache-first prediction.
ExecutionTrace predict(Predictor& predictor, const Program& p, TraceCache& cache);

}  // namespace ctvp

#endif  // CTVP_PREDICTOR_HPP
