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

#include "ctvp/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ctvp {

namespace fs = std::filesystem;

std::size_t Corpus::malicious_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.malicious ? 1 : 0;
    return n;
}

std::size_t Corpus::benign_count() const { return entries.size() - malicious_count(); }

Corpus load_corpus(const std::string& dir) {
    fs::path root(dir);
    fs::path manifest_path = root / "manifest.json";
    if (!fs::exists(manifest_path)) {
        throw ManifestError("missing manifest.json in " + dir);
    }

    std::ifstream in(manifest_path);
    if (!in) throw ManifestError("cannot open " + manifest_path.string());
    nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
    if (manifest.is_discarded() || !manifest.contains("entries") ||
        !manifest["entries"].is_array()) {
        throw ManifestError("malformed manifest.json in " + dir);
    }

    Corpus corpus;
    for (const auto& item : manifest["entries"]) {
        std::string id = item.value("id", std::string{});
        auto fail = [&](const std::string& why) {
            corpus.entry_errors.push_back({id.empty() ? "<missing id>" : id, why});
        };
        if (id.empty() || !item.contains("path") || !item.contains("label")) {
            fail("entry needs id, path, and label");
            continue;
        }
        std::string label = item["label"].get<std::string>();
        if (label != "benign" && label != "malicious") {
            fail("label must be benign or malicious");
            continue;
        }

        CorpusEntry entry;
        entry.id = id;
        entry.malicious = label == "malicious";
        fs::path source_path = root / item["path"].get<std::string>();
        entry.source_path = source_path.string();

        if (entry.malicious) {
            if (!item.contains("trigger")) {
                fail("malicious entry lacks a trigger");
                continue;
            }
            const auto& trig = item["trigger"];
            TriggerSpec spec;
            spec.pattern = trig.value("pattern", std::string{});
            try {
                spec.payload =
                    divergence_mode_from_name(trig.value("payload", "corrupt_output"));
            } catch (const std::exception& e) {
                fail(e.what());
                continue;
            }
            spec.survival_prob = trig.value("survival_prob", 0.5);
            if (spec.pattern.empty()) {
                fail("trigger pattern is empty");
                continue;
            }
            if (spec.survival_prob < 0.0 || spec.survival_prob > 1.0) {
                fail("survival_prob outside [0,1]");
                continue;
            }
            entry.trigger = std::move(spec);
        }

        std::ifstream src(source_path);
        if (!src) {
            fail("missing source file: " + source_path.string());
            continue;
        }
        std::ostringstream buffer;
        buffer << src.rdbuf();
        ParseResult parsed = parse_program(buffer.str());
        if (!parsed.ok()) {
            fail(parsed.error->to_string());
            continue;
        }
        entry.program = std::move(*parsed.program);
        corpus.entries.push_back(std::move(entry));
    }
    return corpus;
}

}  // namespace ctvp
