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

#include "ctvp/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctvp {

void Thresholds::validate() const {
    if (t_strict < 0.0 || t_strict > 1.0 || t_soft < 0.0 || t_soft > 1.0 ||
        t_strict > t_soft) {
        throw std::invalid_argument("thresholds must satisfy 0 <= t_strict <= t_soft <= 1");
    }
    if (gap_delta <= 0.0) throw std::invalid_argument("gap_delta must be positive");
    if (percentile_p < 0.0 || percentile_p > 100.0) {
        throw std::invalid_argument("percentile_p outside [0,100]");
    }
}

const char* decision_name(Decision d) {
    return d == Decision::Accept ? "ACCEPT" : "REJECT";
}

const char* verdict_regime_name(VerdictRegime r) {
    switch (r) {
        case VerdictRegime::StrictReject: return "strict_reject";
        case VerdictRegime::SoftTrustedCheck: return "soft_trusted_check";
        case VerdictRegime::HardAccept: return "hard_accept";
        case VerdictRegime::InsufficientTraces: return "insufficient_traces";
        case VerdictRegime::InvalidOriginal: return "invalid_original";
    }
    return "unknown";
}

VerdictRegime regime_for_consistency(double c, const Thresholds& th) {
    if (c < th.t_strict) return VerdictRegime::StrictReject;
    if (c < th.t_soft) return VerdictRegime::SoftTrustedCheck;
    return VerdictRegime::HardAccept;
}

VerdictRecord verify(const Program& p, const OrbitConfig& cfg, const Thresholds& th,
                     Predictor& untrusted, Predictor& trusted, const SimilarityWeights& w,
                     TraceCache& cache) {
    VerdictRecord record;

    std::vector<std::string> id_list = collect_identifiers(p.ast);
    std::set<std::string> original_ids(id_list.begin(), id_list.end());

    ExecutionTrace tau0 = canonicalize_trace(predict(untrusted, p, cache), {}, {}, original_ids);
    if (!tau0.valid) {
        record.decision = Decision::Reject;
        record.regime = VerdictRegime::InvalidOriginal;
        return record;
    }

    Orbit orbit = generate_orbit(p, cfg);
    record.orbit_attempts = orbit.attempts;
    record.orbit_fallback_used = orbit.fallback_used;
    record.orbit_accepted = orbit.variants.size() - orbit.fallback_count;

    std::vector<ExecutionTrace> traces;
    traces.reserve(orbit.variants.size() + 1);
    traces.push_back(std::move(tau0));
    for (const Variant& v : orbit.variants) {
        ExecutionTrace raw = predict(untrusted, v.program, cache);
        traces.push_back(canonicalize_trace(raw, v.rename_map, v.injected_vars, original_ids));
    }

    std::size_t valid_count = 0;
    for (const auto& t : traces) {
        if (t.valid) ++valid_count;
    }
    record.valid_trace_count = valid_count;
    if (valid_count < 2) {
        record.decision = Decision::Reject;
        record.regime = VerdictRegime::InsufficientTraces;
        return record;
    }

    ConsistencyResult consistency = consistency_percentile(traces, th.percentile_p, w);
    record.consistency = consistency.percentile_score;
    record.consistency_mean = consistency.mean_score;

    record.regime = regime_for_consistency(record.consistency, th);
    record.flagged_for_monitoring = record.regime == VerdictRegime::SoftTrustedCheck;

    switch (record.regime) {
        case VerdictRegime::StrictReject:
            record.decision = Decision::Reject;
            break;
        case VerdictRegime::HardAccept:
            record.decision = Decision::Accept;
            break;
        case VerdictRegime::SoftTrustedCheck: {
            ExecutionTrace tau_trusted =
                canonicalize_trace(predict(trusted, p, cache), {}, {}, original_ids);
            if (!tau_trusted.valid) {
                // Trusted prediction failed: reject with a zero trust score.
                record.trusted_score = 0.0;
                record.gap = 0.0 - record.consistency;
                record.decision = Decision::Reject;
                break;
            }
            std::vector<double> sims;
            sims.reserve(valid_count);
            for (const auto& t : traces) {
                if (t.valid) sims.push_back(trace_sim(tau_trusted, t, w));
            }
            double s_trusted = median_of(std::move(sims));
            double gap = s_trusted - record.consistency;
            record.trusted_score = s_trusted;
            record.gap = gap;
            record.decision = (s_trusted < th.t_trust || gap > th.gap_delta)
                                  ? Decision::Reject
                                  : Decision::Accept;
            break;
        }
        default:
            break;
    }
    return record;
}

std::pair<double, PidState> pid_update(const PidConfig& cfg, const PidState& state, double theta,
                                       double fpr_observed) {
    if (fpr_observed < 0.0 || fpr_observed > 1.0) {
        throw std::invalid_argument("observed FPR outside [0,1]");
    }
    PidState next = state;
    double error = fpr_observed - cfg.fpr_target;
    next.integral = std::clamp(state.integral + error, -1.0, 1.0);
    double derivative = error - state.prev_error;
    next.prev_error = error;
    double updated =
        theta - (cfg.kp * error + cfg.ki * next.integral + cfg.kd * derivative);
    return {std::clamp(updated, cfg.clamp_lo, cfg.clamp_hi), next};
}

ArqFlag flag_by_arq(double c_mean, double tau) {
    return c_mean < tau ? ArqFlag::Alert : ArqFlag::Ok;
}

}  // namespace ctvp
