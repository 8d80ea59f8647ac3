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

#include "scholarlda/recommend.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_set>

namespace scholarlda {

EntityProfile EntityProfile::from_counts(
    std::string entity_id, std::map<std::size_t, std::size_t> counts,
    std::size_t item_count) {
  if (item_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "an entity needs at least one item");
  }
  EntityProfile profile;
  profile.entity_id = std::move(entity_id);
  profile.item_count = item_count;
  for (const auto& [topic, count] : counts) {
    if (count > 0) {
      profile.item_topics.emplace(topic, count);
      profile.topic_set.insert(topic);
    }
  }
  return profile;
}

MembershipRule MembershipRule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view()
                                                    : text.substr(colon + 1);
  auto fail = [&]() -> MembershipRule {
    throw Error(ErrorCode::kInvalidArgument,
                "membership rule must be top:M or threshold:T, got '" +
                    std::string(text) + "'");
  };
  if (kind == "top") {
    std::size_t m = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || m < 1) return fail();
    return top(m);
  }
  if (kind == "threshold") {
    double t = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), t);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || t < 0.0) {
      return fail();
    }
    return at_least(t);
  }
  return fail();
}

std::vector<std::size_t> member_topics(std::span<const double> theta_row,
                                       const MembershipRule& rule) {
  std::vector<std::size_t> topics;
  if (rule.kind == MembershipRule::Kind::kThreshold) {
    for (std::size_t k = 0; k < theta_row.size(); ++k) {
      if (theta_row[k] >= rule.threshold) topics.push_back(k);
    }
    return topics;
  }
  topics.resize(theta_row.size());
  std::iota(topics.begin(), topics.end(), std::size_t{0});
  const std::size_t m = std::min(rule.top_m, topics.size());
  std::partial_sort(topics.begin(), topics.begin() + static_cast<long>(m),
                    topics.end(), [&](std::size_t a, std::size_t b) {
                      if (theta_row[a] != theta_row[b]) {
                        return theta_row[a] > theta_row[b];
                      }
                      return a < b;
                    });
  topics.resize(m);
  std::sort(topics.begin(), topics.end());
  return topics;
}

namespace {

bool belongs(const EncodedDoc& doc, std::string_view entity, EntityKind kind) {
  if (kind == EntityKind::kVenue) return doc.venue == entity;
  return std::find(doc.entity_refs.begin(), doc.entity_refs.end(), entity) !=
         doc.entity_refs.end();
}

}  // namespace

std::vector<std::string> entities(const Corpus& corpus, EntityKind kind) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& doc : corpus.docs()) {
    if (kind == EntityKind::kVenue) {
      if (seen.insert(doc.venue).second) out.push_back(doc.venue);
      continue;
    }
    for (const auto& author : doc.entity_refs) {
      if (seen.insert(author).second) out.push_back(author);
    }
  }
  return out;
}

EntityProfile entity_profile(const TopicModel& model, const Corpus& corpus,
                             std::string_view entity_id, EntityKind kind,
                             const MembershipRule& rule) {
  if (model.num_docs != corpus.num_docs()) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "model and corpus differ in document count");
  }
  std::map<std::size_t, std::size_t> counts;
  std::size_t items = 0;
  for (const auto& doc : corpus.docs()) {
    if (!belongs(doc, entity_id, kind)) continue;
    ++items;
    for (const std::size_t k : member_topics(model.theta_row(doc.doc_index), rule)) {
      ++counts[k];
    }
  }
  if (items == 0) {
    throw Error(ErrorCode::kUnknownEntity,
                "no documents for entity '" + std::string(entity_id) + "'");
  }
  return EntityProfile::from_counts(std::string(entity_id), std::move(counts),
                                    items);
}

double overlap_score(const std::set<std::size_t>& target,
                     const EntityProfile& profile) {
  std::size_t occurrences = 0;
  std::size_t shared = 0;
  for (const std::size_t t : target) {
    if (const auto it = profile.item_topics.find(t);
        it != profile.item_topics.end()) {
      occurrences += it->second;
    }
    if (profile.topic_set.count(t)) ++shared;
  }
  // Sum of n(t)/|T_f| over the target equals (sum of n(t)) / |T_f|.
  return static_cast<double>(occurrences) /
         static_cast<double>(profile.item_count) * static_cast<double>(shared);
}

RankedRecommendation rank_entities(const std::set<std::size_t>& target,
                                   std::span<const EntityProfile> profiles) {
  if (target.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "target topic set is empty");
  }
  RankedRecommendation ranked;
  ranked.reserve(profiles.size());
  for (const auto& profile : profiles) {
    ranked.push_back({profile.entity_id, overlap_score(target, profile)});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredEntity& a, const ScoredEntity& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.entity_id < b.entity_id;
            });
  return ranked;
}

}  // namespace scholarlda
