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

// Shared test fixtures and independent oracles. Nothing here calls into the
// sampler internals it is used to check.

#ifndef SCHOLARLDA_TESTS_FIXTURES_HPP_
#define SCHOLARLDA_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scholarlda/corpus.hpp"
#include "scholarlda/lda.hpp"

namespace scholarlda::testing {

// Term names "w000", "w001", ...
std::string term_name(std::size_t id);
Vocabulary numbered_vocab(std::size_t V);

struct DocSpec {
  std::vector<TermId> tokens;
  std::string venue = "V";
  std::optional<int> year;
  std::vector<std::string> authors;
};

Corpus make_meta_corpus(const std::vector<DocSpec>& docs, std::size_t V);
Corpus make_corpus(const std::vector<std::vector<TermId>>& docs, std::size_t V);

// Documents with lengths in [min_len, max_len] and uniform word ids.
Corpus random_corpus(std::size_t docs, std::size_t V, std::size_t min_len,
                     std::size_t max_len, std::uint64_t seed);

struct SyntheticData {
  Corpus corpus;
  Corpus heldout;                 // drawn from the same process
  std::vector<double> true_phi;   // row-major K x V
};

// K topics with disjoint, equal-size, uniform word supports. Document
// proportions come from a symmetric Dirichlet(doc_concentration).
SyntheticData disjoint_topics(std::size_t K, std::size_t V, std::size_t docs,
                              std::size_t tokens_per_doc,
                              std::size_t heldout_docs,
                              double doc_concentration, std::uint64_t seed);

// Greedy one-to-one matching of recovered rows to true rows by cosine
// similarity; returns the mean similarity over matched pairs.
double greedy_matched_cosine(const std::vector<double>& recovered,
                             const std::vector<double>& truth, std::size_t K,
                             std::size_t V);

// Direct evaluation of the collapsed conditional from raw assignments: all
// counts are recomputed from z with token (doc, pos) left out.
std::vector<double> oracle_conditional(
    const std::vector<std::vector<TermId>>& words,
    const std::vector<std::vector<Count>>& z, std::size_t V, std::size_t K,
    double alpha, double beta, std::size_t doc, std::size_t pos);

double median(std::vector<double> values);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }
  std::filesystem::path write(const std::string& name,
                              const std::string& content) const;

 private:
  std::filesystem::path path_;
};

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args);

// Parses csv text produced by the CLI (no quoted fields).
std::vector<std::vector<std::string>> parse_simple_csv(const std::string& text);

}  // namespace scholarlda::testing

#endif  // SCHOLARLDA_TESTS_FIXTURES_HPP_
