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

#ifndef CTVP_CORPUS_HPP
#define CTVP_CORPUS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctvp/predictor.hpp"
#include "ctvp/program.hpp"

namespace ctvp {

struct CorpusEntry {
    std::string id;
    std::string source_path;  // absolute
    bool malicious = false;
    std::optional<TriggerSpec> trigger;  // required for malicious entries
    Program program;
};

// Per-entry load failure; collected, not fail-fast.
struct CorpusEntryError {
    std::string id;
    std::string message;
};

struct Corpus {
    std::vector<CorpusEntry> entries;
    std::vector<CorpusEntryError> entry_errors;

    std::size_t malicious_count() const;
    std::size_t benign_count() const;
};

// Manifest-level failure (missing directory, missing or malformed
// manifest.json).
class ManifestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Loads `dir`/manifest.json and every listed .mpy source. Entries that fail
// to load or parse land in entry_errors; the rest load normally.
Corpus load_corpus(const std::string& dir);

}  // namespace ctvp

#endif  // CTVP_CORPUS_HPP
