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

#include "scholarlda/topics.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>

namespace scholarlda {

bool DocFilter::matches(const EncodedDoc& doc) const {
  if (venue && doc.venue != *venue) return false;
  if (year_from || year_to) {
    if (!doc.year) return false;
    if (year_from && *doc.year < *year_from) return false;
    if (year_to && *doc.year > *year_to) return false;
  }
  return true;
}

std::string DocFilter::describe() const {
  std::string out;
  if (venue) out += "venue=" + *venue;
  if (year_from || year_to) {
    if (!out.empty()) out += ' ';
    out += "years=";
    if (year_from) out += std::to_string(*year_from);
    out += "..";
    if (year_to) out += std::to_string(*year_to);
  }
  return out.empty() ? "all" : out;
}

TopicSummary top_words(const TopicModel& model, std::size_t topic,
                       std::size_t n) {
  const std::size_t V = model.vocab_size();
  if (topic >= model.num_topics()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "topic " + std::to_string(topic) + " out of range");
  }
  if (n < 1 || n > V) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "word count must be in [1, " + std::to_string(V) + "]");
  }
  const auto row = model.phi_row(topic);
  const auto terms = model.vocab.terms();
  std::vector<TermId> order(V);
  std::iota(order.begin(), order.end(), TermId{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(n),
                    order.end(), [&](TermId a, TermId b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return terms[a] < terms[b];
                    });
  TopicSummary summary;
  summary.topic_id = topic;
  summary.top_words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    summary.top_words.emplace_back(terms[order[i]], row[order[i]]);
    summary.mass_covered += row[order[i]];
  }
  return summary;
}

PrevalenceRanking topic_prevalence(const TopicModel& model,
                                   const Corpus& corpus,
                                   std::span<const std::size_t> doc_indices,
                                   std::string scope) {
  if (model.num_docs != corpus.num_docs()) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "model and corpus differ in document count");
  }
  if (doc_indices.empty()) {
    throw Error(ErrorCode::kEmptySelection,
                "no document matches scope '" + scope + "'");
  }
  const std::size_t K = model.num_topics();
  std::vector<double> mass(K, 0.0);
  double tokens = 0.0;
  for (const std::size_t d : doc_indices) {
    if (d >= corpus.num_docs()) {
      throw Error(ErrorCode::kIndexOutOfRange, "document index out of range");
    }
    const auto length = static_cast<double>(corpus.doc(d).tokens.size());
    const auto theta = model.theta_row(d);
    for (std::size_t k = 0; k < K; ++k) mass[k] += length * theta[k];
    tokens += length;
  }
  PrevalenceRanking ranking;
  ranking.scope = std::move(scope);
  ranking.entries.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    ranking.entries.emplace_back(k, mass[k] / tokens);
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranking;
}

PrevalenceRanking topic_prevalence(const TopicModel& model,
                                   const Corpus& corpus,
                                   const DocFilter& filter) {
  std::vector<std::size_t> selected;
  for (const auto& doc : corpus.docs()) {
    if (filter.matches(doc)) selected.push_back(doc.doc_index);
  }
  return topic_prevalence(model, corpus, selected, filter.describe());
}

std::vector<TopicSummary> recommend_fields(const TopicModel& model,
                                           const Corpus& corpus,
                                           const DocFilter& filter,
                                           std::size_t n, std::size_t words) {
  const auto ranking = topic_prevalence(model, corpus, filter);
  words = std::min(words, model.vocab_size());
  std::vector<TopicSummary> fields;
  const std::size_t count = std::min(n, ranking.entries.size());
  fields.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    fields.push_back(top_words(model, ranking.entries[i].first, words));
  }
  return fields;
}

std::map<std::size_t, std::string> parse_topic_labels(std::istream& in) {
  std::map<std::size_t, std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    std::size_t topic = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + std::min(comma, line.size()),
                        topic);
    if (comma == std::string::npos || ec != std::errc() ||
        ptr != line.data() + comma) {
      if (line_no == 1) continue;  // header row
      throw Error(ErrorCode::kSchemaMismatch,
                  "topic labels line " + std::to_string(line_no) +
                      ": expected topic_id,label");
    }
    labels[topic] = line.substr(comma + 1);
  }
  return labels;
}

}  // namespace scholarlda
