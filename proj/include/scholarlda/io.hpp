// Copyright 2026 The scholarlda Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Corpus and model files. Both are JSON documents written with a fixed key
// order and one row per line, so identical inputs give identical bytes.
// Field names are listed in docs/file-formats.md.

#ifndef SCHOLARLDA_IO_HPP_
#define SCHOLARLDA_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "scholarlda/corpus.hpp"
#include "scholarlda/lda.hpp"

namespace scholarlda {

inline constexpr int kCorpusSchemaVersion = 1;
inline constexpr int kModelSchemaVersion = 1;

// "sha256:<hex>" over the canonical serialization of vocabulary and
// documents.
std::string corpus_fingerprint(const Corpus& corpus);

std::string serialize_corpus(const Corpus& corpus);
Corpus parse_corpus(std::string_view text);
Corpus load_corpus(const std::filesystem::path& path);

std::string serialize_model(const TopicModel& model);
TopicModel parse_model(std::string_view text);
TopicModel load_model(const std::filesystem::path& path);

// Throws kFingerprintMismatch unless the model was trained on `corpus`.
void require_same_corpus(const TopicModel& model, const Corpus& corpus);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so a
// failure never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace scholarlda

#endif  // SCHOLARLDA_IO_HPP_
