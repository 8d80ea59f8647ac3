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

// Ingestion of scholarly records and construction of the encoded corpus
// that the sampler trains on.

#ifndef SCHOLARLDA_CORPUS_HPP_
#define SCHOLARLDA_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scholarlda/error.hpp"

namespace scholarlda {

using TermId = std::uint32_t;

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct RawRecord {
  std::string id;
  std::string title;
  std::string abstract;
  std::string venue;
  std::optional<int> year;
  std::vector<std::string> author_ids;
};

enum class RecordFormat { kJsonl, kCsv };

// Picks the format from the file extension (.jsonl/.json/.ndjson or .csv).
std::optional<RecordFormat> format_from_extension(
    const std::filesystem::path& path);

struct RowIssue {
  std::size_t line = 0;  // 1-based line where the offending row starts
  ErrorCode code = ErrorCode::kSchemaMismatch;
  std::string message;
};

// Raised by the record loaders. Every malformed row of the batch is listed,
// not just the first one.
class RecordError : public Error {
 public:
  explicit RecordError(std::vector<RowIssue> issues);

  const std::vector<RowIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<RowIssue> issues_;
};

// jsonl: one object per line with keys id, title, abstract, venue, year and
// an optional authors array. csv: header row with the same column names,
// authors separated by ';'. Only id and title are mandatory.
std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format);
std::vector<RawRecord> load_records(const std::filesystem::path& path,
                                    RecordFormat format);

class Stoplist {
 public:
  Stoplist() = default;

  // One term per line; blank lines and lines starting with '#' are ignored.
  // Entries are case-folded. An entry with inner whitespace is rejected.
  static Stoplist parse(std::istream& in);
  static Stoplist load(const std::filesystem::path& path);
  // The English stoplist shipped with the repository (data/stoplist_en.txt),
  // compiled into the library.
  static const Stoplist& english();

  bool contains(std::string_view term) const;
  std::size_t size() const noexcept { return terms_.size(); }
  void insert(std::string term);

 private:
  std::unordered_set<std::string> terms_;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> terms);

  // Returns the existing id when the term is already present.
  TermId add(std::string_view term);
  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const;

  std::size_t size() const noexcept { return id_to_term_.size(); }
  std::span<const std::string> terms() const noexcept { return id_to_term_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.id_to_term_ == b.id_to_term_;
  }

 private:
  std::vector<std::string> id_to_term_;
  std::unordered_map<std::string, TermId> term_to_id_;
};

struct EncodedDoc {
  std::size_t doc_index = 0;
  std::string id;
  std::vector<TermId> tokens;
  std::string venue;
  std::optional<int> year;
  std::vector<std::string> entity_refs;
};

// Immutable once constructed. The constructor checks that doc indices are
// dense, that no document is empty and that every token id is below V.
class Corpus {
 public:
  Corpus(Vocabulary vocab, std::vector<EncodedDoc> docs);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  std::span<const EncodedDoc> docs() const noexcept { return docs_; }
  const EncodedDoc& doc(std::size_t index) const { return docs_.at(index); }
  std::size_t num_docs() const noexcept { return docs_.size(); }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  std::size_t total_tokens() const noexcept { return total_tokens_; }

 private:
  Vocabulary vocab_;
  std::vector<EncodedDoc> docs_;
  std::size_t total_tokens_ = 0;
};

// Maximal runs of letters and digits, case-folded; runs that contain a digit
// or are shorter than two characters are discarded. UTF-8 aware.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> apply_stoplist(const std::vector<std::string>& terms,
                                        const Stoplist& stoplist);

struct DroppedDocument {
  std::string id;
  std::string reason;
};

struct BuildResult {
  Corpus corpus;
  std::vector<DroppedDocument> dropped;
};

// Title and abstract are joined (title first), tokenized and stoplisted.
// Terms whose corpus frequency is below min_term_count are removed, then
// documents left empty are dropped. Term ids follow first occurrence.
BuildResult build_corpus(std::span<const RawRecord> records,
                         const Stoplist& stoplist,
                         std::size_t min_term_count = 1);

// Encodes records against a frozen vocabulary; unknown terms are skipped.
// Used for held-out evaluation.
BuildResult encode_with_vocabulary(std::span<const RawRecord> records,
                                   const Stoplist& stoplist,
                                   const Vocabulary& vocab);

}  // namespace scholarlda

#endif  // SCHOLARLDA_CORPUS_HPP_
