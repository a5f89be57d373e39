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

#include "ctvp/predictor.hpp"

#include <sstream>
#include <stdexcept>

#include "ctvp/rng.hpp"

namespace ctvp {

namespace {

// First 16 hex chars of a program hash folded into a u64 seed component.
std::uint64_t hash_prefix_u64(const std::string& hex_hash) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 16 && i < hex_hash.size(); ++i) {
        char c = hex_hash[i];
        std::uint64_t d = (c >= '0' && c <= '9')   ? static_cast<std::uint64_t>(c - '0')
                          : (c >= 'a' && c <= 'f') ? static_cast<std::uint64_t>(c - 'a' + 10)
                          : (c >= 'A' && c <= 'F') ? static_cast<std::uint64_t>(c - 'A' + 10)
                                                   : 0;
        v = (v << 4) | d;
    }
    return v;
}

std::string hex8(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace

const char* divergence_mode_name(DivergenceMode m) {
    switch (m) {
        case DivergenceMode::CorruptOutput: return "corrupt_output";
        case DivergenceMode::ExtraSteps: return "extra_steps";
        case DivergenceMode::AlteredValues: return "altered_values";
    }
    return "unknown";
}

DivergenceMode divergence_mode_from_name(const std::string& name) {
    if (name == "corrupt_output") return DivergenceMode::CorruptOutput;
    if (name == "extra_steps") return DivergenceMode::ExtraSteps;
    if (name == "altered_values") return DivergenceMode::AlteredValues;
    throw std::invalid_argument("unknown divergence mode: " + name);
}

std::string ReferencePredictor::id() const {
    return "reference:max_steps=" + std::to_string(max_steps_);
}

ExecutionTrace ReferencePredictor::predict(const Program& p) {
    return interpret(p, max_steps_);
}

ExecutionTrace apply_divergence(const ExecutionTrace& reference, DivergenceMode mode,
                                std::uint64_t seed) {
    if (!reference.valid) return reference;
    ExecutionTrace out = reference;
    Rng rng(seed);
    switch (mode) {
        case DivergenceMode::CorruptOutput:
            out.final_output += "#PWNED:" + hex8(rng.next_u64());
            break;
        case DivergenceMode::ExtraSteps: {
            std::size_t extra = 2 + rng.next_below(3);
            Env tail = out.steps.empty() ? Env{} : out.steps.back().env;
            int line = out.steps.empty() ? 1 : out.steps.back().line;
            for (std::size_t i = 0; i < extra; ++i) {
                out.steps.push_back({line + static_cast<int>(i) + 1, tail});
            }
            break;
        }
        case DivergenceMode::AlteredValues: {
            for (TraceStep& step : out.steps) {
                if (step.env.empty() || !rng.next_bool(0.5)) continue;
                std::size_t pick = rng.next_below(step.env.size());
                auto it = step.env.begin();
                std::advance(it, static_cast<std::ptrdiff_t>(pick));
                Value& v = it->second;
                if (is_int(v)) {
                    v = as_int(v) + 1 + static_cast<std::int64_t>(rng.next_below(9));
                } else if (is_bool(v)) {
                    v = !as_bool(v);
                } else {
                    v = as_str(v) + "!";
                }
            }
            break;
        }
    }
    return out;
}

std::string BackdooredSimPredictor::id() const {
    std::ostringstream os;
    os << "backdoored:pattern=" << sha256_hex(trigger_.pattern).substr(0, 12)
       << ":payload=" << divergence_mode_name(trigger_.payload)
       << ":rho=" << trigger_.survival_prob << ":seed=" << seed_
       << ":max_steps=" << max_steps_;
    return os.str();
}

ExecutionTrace BackdooredSimPredictor::predict(const Program& p) {
    ExecutionTrace reference = interpret(p, max_steps_);
    bool triggered = trigger_.pattern.empty()
                         ? false
                         : p.source.find(trigger_.pattern) != std::string::npos;
    if (!triggered) {
        Rng coin(derive_seed(hash_prefix_u64(p.hash), seed_));
        triggered = coin.next_bool(trigger_.survival_prob);
    }
    if (!triggered) return reference;
    std::uint64_t divergence_seed = derive_seed(hash_prefix_u64(p.hash), seed_ ^ 0x5D1F);
    return apply_divergence(reference, trigger_.payload, divergence_seed);
}

std::string NoisyPredictor::id() const {
    std::ostringstream os;
    os << "noisy:eps=" << epsilon_ << ":seed=" << seed_ << ":max_steps=" << max_steps_;
    return os.str();
}

ExecutionTrace NoisyPredictor::predict(const Program& p) {
    ExecutionTrace reference = interpret(p, max_steps_);
    if (!reference.valid) return reference;
    Rng coin(derive_seed(hash_prefix_u64(p.hash), seed_ ^ 0xA11CE));
    if (!coin.next_bool(epsilon_)) return reference;
    ExecutionTrace out =
        apply_divergence(reference, DivergenceMode::AlteredValues, coin.next_u64());
    out.final_output += "#noise";
    return out;
}

TraceCache::TraceCache(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

std::size_t TraceCache::hits() const {
    std::lock_guard<std::mutex> lk(mu_);
    return hits_;
}

std::size_t TraceCache::misses() const {
    std::lock_guard<std::mutex> lk(mu_);
    return misses_;
}

std::size_t TraceCache::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return entries_.size();
}

void TraceCache::clear() {
    std::lock_guard<std::mutex> lk(mu_);
    entries_.clear();
    lru_.clear();
    hits_ = 0;
    misses_ = 0;
}

void TraceCache::evict_locked() {
    // Walk from the least-recently-used end, skipping in-flight entries.
    auto it = lru_.end();
    while (entries_.size() > capacity_ && it != lru_.begin()) {
        --it;
        auto found = entries_.find(*it);
        if (found != entries_.end() && found->second->ready) {
            entries_.erase(found);
            it = lru_.erase(it);
        }
    }
}

ExecutionTrace TraceCache::get_or_compute(const std::string& program_hash,
                                          const std::string& predictor_id,
                                          const std::function<ExecutionTrace()>& compute) {
    const std::string key = program_hash + "|" + predictor_id;
    std::shared_ptr<Entry> entry;
    {
        std::unique_lock<std::mutex> lk(mu_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            ++hits_;
            entry = it->second;
            lru_.splice(lru_.begin(), lru_, entry->lru_pos);
            ready_cv_.wait(lk, [&] { return entry->ready; });
            return entry->trace;
        }
        ++misses_;
        entry = std::make_shared<Entry>();
        lru_.push_front(key);
        entry->lru_pos = lru_.begin();
        entries_.emplace(key, entry);
    }

    // Single-flight: only the inserting thread computes.
    ExecutionTrace trace = compute();
    {
        std::lock_guard<std::mutex> lk(mu_);
        entry->trace = trace;
        entry->ready = true;
        evict_locked();
    }
    ready_cv_.notify_all();
    return trace;
}

ExecutionTrace predict(Predictor& predictor, const Program& p, TraceCache& cache) {
    return cache.get_or_compute(p.hash, predictor.id(),
                                [&predictor, &p] { return predictor.predict(p); });
}

}  // namespace ctvp
