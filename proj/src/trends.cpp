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

#include "scholarlda/trends.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "scholarlda/topics.hpp"

namespace scholarlda {

std::size_t TrendSeries::year_index(int year) const {
  const auto it = std::lower_bound(years.begin(), years.end(), year);
  if (it == years.end() || *it != year) {
    throw Error(ErrorCode::kYearNotInSeries,
                "year " + std::to_string(year) + " not in series for venue '" +
                    venue + "'");
  }
  return static_cast<std::size_t>(it - years.begin());
}

double TrendSeries::at(int year, std::size_t topic) const {
  if (topic >= num_topics) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "topic " + std::to_string(topic) + " out of range");
  }
  return values[year_index(year) * num_topics + topic];
}

std::string_view direction_name(TrendDirection direction) {
  switch (direction) {
    case TrendDirection::kRising: return "rising";
    case TrendDirection::kFalling: return "falling";
    case TrendDirection::kFlat: return "flat";
  }
  return "flat";
}

std::vector<std::string> venues(const Corpus& corpus) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& doc : corpus.docs()) {
    if (seen.insert(doc.venue).second) out.push_back(doc.venue);
  }
  return out;
}

TrendSeries topic_year_series(const TopicModel& model, const Corpus& corpus,
                              std::string_view venue) {
  std::map<int, std::vector<std::size_t>> by_year;
  for (const auto& doc : corpus.docs()) {
    if (doc.venue == venue && doc.year) {
      by_year[*doc.year].push_back(doc.doc_index);
    }
  }
  if (by_year.empty()) {
    throw Error(ErrorCode::kUnknownVenue,
                "no dated documents for venue '" + std::string(venue) + "'");
  }
  TrendSeries series;
  series.venue = std::string(venue);
  series.num_topics = model.num_topics();
  series.values.assign(by_year.size() * series.num_topics, 0.0);
  std::size_t row = 0;
  for (const auto& [year, docs] : by_year) {
    series.years.push_back(year);
    const auto ranking = topic_prevalence(
        model, corpus, docs, series.venue + "/" + std::to_string(year));
    for (const auto& [topic, score] : ranking.entries) {
      series.values[row * series.num_topics + topic] = score;
    }
    ++row;
  }
  return series;
}

TrendVerdict trend_direction(const TrendSeries& series, std::size_t topic,
                             int from_year, int to_year, double epsilon) {
  TrendVerdict verdict;
  verdict.topic_id = topic;
  verdict.from_year = from_year;
  verdict.to_year = to_year;
  verdict.delta = series.at(to_year, topic) - series.at(from_year, topic);
  if (verdict.delta > epsilon) {
    verdict.direction = TrendDirection::kRising;
  } else if (verdict.delta < -epsilon) {
    verdict.direction = TrendDirection::kFalling;
  }
  return verdict;
}

std::vector<std::pair<std::size_t, double>> top_topics_per_year(
    const TrendSeries& series, int year, std::size_t n) {
  const auto values = series.row(series.year_index(year));
  std::vector<std::size_t> order(series.num_topics);
  std::iota(order.begin(), order.end(), std::size_t{0});
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(n),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(order[i], values[order[i]]);
  return out;
}

}  // namespace scholarlda
