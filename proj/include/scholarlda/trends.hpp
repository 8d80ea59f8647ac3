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

// Per-venue, per-year topic prevalence series.

#ifndef SCHOLARLDA_TRENDS_HPP_
#define SCHOLARLDA_TRENDS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scholarlda/corpus.hpp"
#include "scholarlda/lda.hpp"

namespace scholarlda {

inline constexpr double kDefaultFlatBand = 0.001;

struct TrendSeries {
  std::string venue;
  std::vector<int> years;      // strictly increasing
  std::size_t num_topics = 0;
  std::vector<double> values;  // row-major years x K

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * num_topics, num_topics};
  }
  // Index of `year` in `years`; throws kYearNotInSeries.
  std::size_t year_index(int year) const;
  double at(int year, std::size_t topic) const;
};

enum class TrendDirection { kRising, kFalling, kFlat };

std::string_view direction_name(TrendDirection direction);

struct TrendVerdict {
  std::size_t topic_id = 0;
  int from_year = 0;
  int to_year = 0;
  TrendDirection direction = TrendDirection::kFlat;
  double delta = 0.0;
};

// Distinct venues in first-occurrence order.
std::vector<std::string> venues(const Corpus& corpus);

// One row per year that has at least one dated document of the venue.
// Undated documents are ignored. Throws kUnknownVenue when the venue has
// no dated documents.
TrendSeries topic_year_series(const TopicModel& model, const Corpus& corpus,
                              std::string_view venue);

TrendVerdict trend_direction(const TrendSeries& series, std::size_t topic,
                             int from_year, int to_year,
                             double epsilon = kDefaultFlatBand);

// n largest entries of the year's row, ties by ascending topic id.
std::vector<std::pair<std::size_t, double>> top_topics_per_year(
    const TrendSeries& series, int year, std::size_t n);

}  // namespace scholarlda

#endif  // SCHOLARLDA_TRENDS_HPP_
