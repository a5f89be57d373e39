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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "ctvp/baselines.hpp"
#include "ctvp/experiment.hpp"
#include "ctvp/trace.hpp"

using namespace ctvp;

namespace {

const std::string kCorpusDir = std::string(CTVP_REPO_DIR) + "/corpus";

const Corpus& bundled_corpus() {
    static Corpus corpus = load_corpus(kCorpusDir);
    return corpus;
}

std::filesystem::path fresh_temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("ctvp_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("bundled corpus loads with the documented composition") {
    const Corpus& corpus = bundled_corpus();
    for (const auto& err : corpus.entry_errors) {
        CAPTURE(err.id);
        CAPTURE(err.message);
    }
    CHECK(corpus.entry_errors.empty());
    CHECK(corpus.entries.size() == 100);
    CHECK(corpus.malicious_count() == 60);
    CHECK(corpus.benign_count() == 40);
}

TEST_CASE("corpus programs interpret cleanly and round-trip") {
    for (const auto& entry : bundled_corpus().entries) {
        CAPTURE(entry.id);
        ExecutionTrace t = interpret(entry.program);
        CHECK(t.valid);

        // Round-trip oracle across every render style.
        for (RenderStyle style :
             {RenderStyle::Canonical, RenderStyle::Spaced, RenderStyle::Compact}) {
            ParseResult again = parse_program(render_block(entry.program.ast, style));
            REQUIRE(again.ok());
            CHECK(block_equal(entry.program.ast, again.value().ast));
            CHECK(again.value().hash == entry.program.hash);
        }
    }
}

TEST_CASE("malicious entries embed their trigger pattern verbatim") {
    for (const auto& entry : bundled_corpus().entries) {
        if (!entry.malicious) continue;
        CAPTURE(entry.id);
        REQUIRE(entry.trigger.has_value());
        CHECK(entry.program.source.find(entry.trigger->pattern) != std::string::npos);
    }
}

TEST_CASE("benign entries avoid static-suspicious tokens") {
    BaselinePatterns patterns;
    for (const auto& entry : bundled_corpus().entries) {
        if (entry.malicious) continue;
        CAPTURE(entry.id);
        CHECK(static_flag(entry.program.source, patterns).flag == 0);
    }
}

TEST_CASE("corpus sources sit in the typical entropy band") {
    for (const auto& entry : bundled_corpus().entries) {
        CAPTURE(entry.id);
        double h = shannon_entropy(entry.program.source);
        CHECK(h > 3.0);
        CHECK(h < 6.0);
    }
}

TEST_CASE("the bundled forty-line program is forty lines inside the band") {
    std::ifstream in(kCorpusDir + "/benign/b040.mpy");
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 40);
    double h = shannon_entropy(text);
    CHECK(h > 3.0);
    CHECK(h < 6.0);
}

TEST_CASE("missing manifest raises ManifestError") {
    auto dir = fresh_temp_dir("empty");
    CHECK_THROWS_AS(load_corpus(dir.string()), ManifestError);
}

TEST_CASE("per-entry failures are isolated, valid entries still load") {
    auto dir = fresh_temp_dir("partial");
    std::ofstream(dir / "good.mpy") << "x = 1\nprint(x)\n";
    std::ofstream(dir / "broken.mpy") << "x = = 1\n";
    std::ofstream(dir / "manifest.json") << R"({"entries": [
        {"id": "good", "path": "good.mpy", "label": "benign"},
        {"id": "broken", "path": "broken.mpy", "label": "benign"},
        {"id": "missing", "path": "nowhere.mpy", "label": "benign"},
        {"id": "unlabeled", "path": "good.mpy", "label": "other"},
        {"id": "triggerless", "path": "good.mpy", "label": "malicious"}
    ]})";
    Corpus corpus = load_corpus(dir.string());
    CHECK(corpus.entries.size() == 1);
    CHECK(corpus.entries[0].id == "good");
    CHECK(corpus.entry_errors.size() == 4);
}

TEST_CASE("experiment sweep: aggregates recompute from records") {
    RunSettings settings;
    ExperimentReport report =
        run_experiment(bundled_corpus(), {3}, settings, /*seed=*/42);

    REQUIRE(report.records.size() == 100);
    REQUIRE(report.aggregates.size() == 1);
    const KAggregates& agg = report.aggregates[0];

    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    for (const auto& rec : report.records) {
        CHECK(rec.arq_overhead == 4.0);  // constant k+1 column
        bool rejected = rec.decision == "REJECT";
        if (rec.label == "malicious") {
            rejected ? ++tp : ++fn;
        } else {
            rejected ? ++fp : ++tn;
        }
    }
    CHECK(agg.tp == tp);
    CHECK(agg.fn == fn);
    CHECK(agg.fp == fp);
    CHECK(agg.tn == tn);
    double detection = static_cast<double>(tp) / static_cast<double>(tp + fn);
    CHECK(std::fabs(agg.detection_rate - detection) < 5e-4);
    CHECK(std::fabs(agg.benign_acceptance - (1.0 - agg.fpr)) < 1e-12);
    CHECK(agg.arq_mean == 4.0);
    CHECK(agg.arq_median == 4.0);
    CHECK(agg.arq_min == 4.0);
    CHECK(agg.arq_max == 4.0);

    // Reference predictor on benign programs: no false positives.
    CHECK(agg.fp == 0);

    // Threshold trajectory stays in the clamp band.
    CHECK_FALSE(report.trajectory.empty());
    for (const auto& point : report.trajectory) {
        CHECK(point.t_strict >= 0.5);
        CHECK(point.t_strict <= 0.99);
    }
}

TEST_CASE("experiment is deterministic and stable across thread counts") {
    RunSettings a = RunSettings{};
    ExperimentReport r1 = run_experiment(bundled_corpus(), {5}, a, 7);
    ExperimentReport r2 = run_experiment(bundled_corpus(), {5}, a, 7);
    CHECK(report_to_json(r1).dump() == report_to_json(r2).dump());

    RunSettings serial = a;
    serial.threads = 1;
    ExperimentReport r3 = run_experiment(bundled_corpus(), {5}, serial, 7);
    CHECK(report_to_json(r1).dump() == report_to_json(r3).dump());

    ExperimentReport other_seed = run_experiment(bundled_corpus(), {5}, a, 8);
    CHECK(report_to_json(r1).dump() != report_to_json(other_seed).dump());
}

TEST_CASE("report emission: json round-trips, csv flattens, markdown has the stat table") {
    RunSettings settings;
    ExperimentReport report = run_experiment(bundled_corpus(), {3, 5}, settings, 3);

    auto dir = fresh_temp_dir("report");
    std::string json_path = emit_report(report, "json", dir.string());
    std::ifstream in(json_path, std::ios::binary);
    std::string payload((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(payload);
    CHECK(parsed.dump(2) + "\n" == payload);

    std::string csv = report_to_csv(report);
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n' ? 1 : 0;
    CHECK(rows == 1 + 2 * bundled_corpus().entries.size());  // header + programs*ks

    std::string md = report_to_markdown(report);
    CHECK(md.find("| Orbit Size | Mean | Median | Min | Max |") != std::string::npos);
    CHECK(md.find("| Orbit Size | Mean | Median | Standard Deviation |") != std::string::npos);
}

TEST_CASE("baseline table: complements hold and weighted recomputes row-by-row") {
    BaselineTable table = run_baselines(bundled_corpus());
    REQUIRE(table.methods.size() == 4);
    for (const auto& row : table.methods) {
        CAPTURE(row.method);
        CHECK(std::fabs(row.benign_acceptance - (1.0 - row.fpr)) < 1e-12);
        CHECK(row.tp + row.fn == bundled_corpus().malicious_count());
        CHECK(row.fp + row.tn == bundled_corpus().benign_count());
    }
    for (const auto& entry : table.per_entry) {
        CHECK(entry.result.b_weighted ==
              weighted_flag(entry.result.b_static, entry.result.b_complex,
                            entry.result.b_entropy));
    }
    // This corpus sits in the typical entropy band, so the entropy detector
    // finds nothing on either side.
    CHECK(table.methods[2].method == "Entropy");
    CHECK(table.methods[2].detection_rate == 0.0);
    CHECK(table.methods[2].fpr == 0.0);
    // Static patterns catch the planted tokens and nothing benign.
    CHECK(table.methods[0].method == "Static Analysis");
    CHECK(table.methods[0].detection_rate > 0.3);
    CHECK(table.methods[0].detection_rate < 0.7);
    CHECK(table.methods[0].fpr == 0.0);
}

TEST_CASE("config file round-trip into run settings") {
    ConfigMap map = ConfigMap::parse(
        "delta_min = 0.1\n"
        "# comment line\n"
        "alpha=0.3\nbeta=0.4\ngamma=0.3\n"
        "t_strict = 0.6\nt_soft = 0.9\nt_trust=0.8\n"
        "pid_period = 5\n"
        "flops_per_token = 1.5B\n"
        "baseline.patterns = eval(,secret_token\n"
        "cache_cap = 50\n");
    RunSettings s = RunSettings::from_config(map);
    CHECK(s.orbit.delta_min == 0.1);
    CHECK(s.weights.alpha == 0.3);
    CHECK(s.thresholds.t_soft == 0.9);
    CHECK(s.pid.update_period == 5);
    CHECK(s.flops_per_token == kFlopsPerToken1_5B);
    CHECK(s.cache_cap == 50);
    REQUIRE(s.patterns.substrings.size() == 2);
    CHECK(s.patterns.substrings[1] == "secret_token");

    CHECK_THROWS(ConfigMap::parse("not a pair\n"));
    CHECK_THROWS(RunSettings::from_config(ConfigMap::parse("alpha=0.9\n")));
}
