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

// Topic-overlap ranking of entities (authors or venues).
//
// An entity f owns a set of items T_f (its documents). Each item contributes
// its member topics, giving occurrence counts n(t, T_f) and the support set
// Topics_f. Against a target topic set Topics_p the score is
//
//   score(f) = ( sum_{t in Topics_p} n(t, T_f) / |T_f| ) * |Topics_p ∩ Topics_f|

#ifndef SCHOLARLDA_RECOMMEND_HPP_
#define SCHOLARLDA_RECOMMEND_HPP_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scholarlda/corpus.hpp"
#include "scholarlda/lda.hpp"

namespace scholarlda {

struct EntityProfile {
  std::string entity_id;
  std::map<std::size_t, std::size_t> item_topics;  // topic -> n(t, T_f)
  std::size_t item_count = 0;                      // |T_f|
  std::set<std::size_t> topic_set;                 // Topics_f

  // Builds a profile and derives topic_set from the non-zero counts.
  static EntityProfile from_counts(std::string entity_id,
                                   std::map<std::size_t, std::size_t> counts,
                                   std::size_t item_count);
};

struct MembershipRule {
  enum class Kind { kTopM, kThreshold };

  Kind kind = Kind::kTopM;
  std::size_t top_m = 3;
  double threshold = 0.0;

  static MembershipRule top(std::size_t m) { return {Kind::kTopM, m, 0.0}; }
  static MembershipRule at_least(double t) {
    return {Kind::kThreshold, 0, t};
  }
  // Parses "top:M" or "threshold:T".
  static MembershipRule parse(std::string_view text);
};

enum class EntityKind { kAuthor, kVenue };

// Topics of one theta row under the rule. Top-m ties favour lower topic ids.
std::vector<std::size_t> member_topics(std::span<const double> theta_row,
                                       const MembershipRule& rule);

// Entity ids of the given kind in first-occurrence order.
std::vector<std::string> entities(const Corpus& corpus, EntityKind kind);

// Throws kUnknownEntity when no document belongs to the entity.
EntityProfile entity_profile(const TopicModel& model, const Corpus& corpus,
                             std::string_view entity_id, EntityKind kind,
                             const MembershipRule& rule);

struct ScoredEntity {
  std::string entity_id;
  double score = 0.0;
};

using RankedRecommendation = std::vector<ScoredEntity>;

double overlap_score(const std::set<std::size_t>& target,
                     const EntityProfile& profile);

// All profiles, highest score first, ties by ascending entity id. Throws
// kInvalidArgument on an empty target.
RankedRecommendation rank_entities(const std::set<std::size_t>& target,
                                   std::span<const EntityProfile> profiles);

}  // namespace scholarlda

#endif  // SCHOLARLDA_RECOMMEND_HPP_
