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

#ifndef SCHOLARLDA_TOPICS_HPP_
#define SCHOLARLDA_TOPICS_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scholarlda/corpus.hpp"
#include "scholarlda/lda.hpp"

namespace scholarlda {

inline constexpr std::size_t kDefaultTopWords = 20;

struct TopicSummary {
  std::size_t topic_id = 0;
  std::vector<std::pair<std::string, double>> top_words;
  double mass_covered = 0.0;
  std::optional<std::string> label;
};

// Metadata predicate over documents. Unset fields match everything; a year
// bound excludes documents without a year.
struct DocFilter {
  std::optional<std::string> venue;
  std::optional<int> year_from;
  std::optional<int> year_to;

  bool matches(const EncodedDoc& doc) const;
  std::string describe() const;
};

struct PrevalenceRanking {
  std::vector<std::pair<std::size_t, double>> entries;  // (topic, score)
  std::string scope;
};

// Highest-probability terms of a topic; equal probabilities are ordered by
// ascending term. Requires 1 <= n <= V.
TopicSummary top_words(const TopicModel& model, std::size_t topic,
                       std::size_t n = kDefaultTopWords);

// Token-weighted mean of theta rows over the documents matching `filter`.
// `corpus` must be the corpus the model was trained on.
PrevalenceRanking topic_prevalence(const TopicModel& model,
                                   const Corpus& corpus,
                                   const DocFilter& filter);

// Same as above over an explicit document subset.
PrevalenceRanking topic_prevalence(const TopicModel& model,
                                   const Corpus& corpus,
                                   std::span<const std::size_t> doc_indices,
                                   std::string scope);

// The n most prevalent topics in scope, each expanded with `words` terms.
std::vector<TopicSummary> recommend_fields(
    const TopicModel& model, const Corpus& corpus, const DocFilter& filter,
    std::size_t n, std::size_t words = kDefaultTopWords);

// Optional human-assigned topic labels: csv with columns topic_id,label.
std::map<std::size_t, std::string> parse_topic_labels(std::istream& in);

}  // namespace scholarlda

#endif  // SCHOLARLDA_TOPICS_HPP_
