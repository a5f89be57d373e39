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

#ifndef CTVP_PROTOCOL_HPP
#define CTVP_PROTOCOL_HPP

#include <optional>
#include <string>
#include <utility>

#include "ctvp/predictor.hpp"
#include "ctvp/similarity.hpp"
#include "ctvp/transform.hpp"

namespace ctvp {

struct Thresholds {
    double t_strict = 0.65;   // initial value; adapted online by the controller
    double t_soft = 0.85;
    double t_trust = 0.75;
    double gap_delta = 0.15;
    double percentile_p = 80.0;

    // Configuration-time sanity check. The adapted strict threshold may
    // later exceed t_soft (its clamp ceiling is 0.99); the verdict checks
    // are ordered so a degenerate soft band behaves per the decision table.
    void validate() const;
};

enum class Decision { Accept, Reject };

enum class VerdictRegime {
    StrictReject,      // C < T_strict
    SoftTrustedCheck,  // T_strict <= C < T_soft, trusted model consulted
    HardAccept,        // C >= T_soft
    InsufficientTraces,
    InvalidOriginal,
};

const char* decision_name(Decision d);
const char* verdict_regime_name(VerdictRegime r);

struct VerdictRecord {
    Decision decision = Decision::Reject;
    VerdictRegime regime = VerdictRegime::InvalidOriginal;
    double consistency = 0.0;         // percentile score C (0 when not computed)
    double consistency_mean = 0.0;    // pairwise average over the same traces
    // Median similarity of the trusted trace against the orbit traces.
    // Present exactly in the soft regime; 0.0 there means the trusted
    // prediction itself was invalid.
    std::optional<double> trusted_score;
    std::optional<double> gap;        // trusted_score - C
    bool flagged_for_monitoring = false;  // true iff regime == SoftTrustedCheck
    std::size_t valid_trace_count = 0;
    std::size_t orbit_attempts = 0;
    std::size_t orbit_accepted = 0;   // non-fallback variants
    bool orbit_fallback_used = false;
};

// Regime selection from the consistency score alone (the trusted check
// resolves SoftTrustedCheck into a decision separately).
VerdictRegime regime_for_consistency(double c, const Thresholds& th);

// Full verification of one program: orbit generation, per-variant trace
// prediction through the shared cache, canonicalization, consistency
// scoring, and the three-way threshold decision with the trusted-model
// cascade in the intermediate band. Failure paths are verdicts, never
// exceptions.
VerdictRecord verify(const Program& p, const OrbitConfig& cfg, const Thresholds& th,
                     Predictor& untrusted, Predictor& trusted, const SimilarityWeights& w,
                     TraceCache& cache);

// PID controller for the strict threshold, targeting an observed false
// positive rate. The integral term is clamped to [-1, 1] (anti-windup) and
// the output to [clamp_lo, clamp_hi].
struct PidConfig {
    double kp = 0.1;
    double ki = 0.05;
    double kd = 0.01;
    double fpr_target = 0.05;
    double clamp_lo = 0.5;
    double clamp_hi = 0.99;
    std::size_t update_period = 10;  // programs between updates
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
};

std::pair<double, PidState> pid_update(const PidConfig& cfg, const PidState& state, double theta,
                                       double fpr_observed);

enum class ArqFlag { Alert, Ok };

// Single-threshold alternate rule over the pairwise-average consistency.
ArqFlag flag_by_arq(double c_mean, double tau);

}  // namespace ctvp

#endif  // CTVP_PROTOCOL_HPP
