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

#include "scholarlda/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace scholarlda {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string issues_message(const std::vector<RowIssue>& issues) {
  std::ostringstream out;
  out << issues.size() << " malformed record(s)";
  for (const auto& issue : issues) {
    out << "; line " << issue.line << ": " << issue.message;
  }
  return out.str();
}

ErrorCode dominant_code(const std::vector<RowIssue>& issues) {
  if (issues.empty()) return ErrorCode::kSchemaMismatch;
  const ErrorCode first = issues.front().code;
  for (const auto& issue : issues) {
    if (issue.code != first) return ErrorCode::kSchemaMismatch;
  }
  return first;
}

std::optional<int> parse_year_text(std::string_view text, std::string& err) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  int year = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                         year);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    err = "year is not an integer: '" + std::string(text) + "'";
    return std::nullopt;
  }
  return year;
}

bool year_in_range(int year) { return year >= kMinYear && year <= kMaxYear; }

// Shared checks once a row has been turned into a RawRecord.
void validate_record(const RawRecord& record, std::size_t line,
                     std::unordered_map<std::string, std::size_t>& seen,
                     std::vector<RowIssue>& issues) {
  if (record.year && !year_in_range(*record.year)) {
    issues.push_back({line, ErrorCode::kSchemaMismatch,
                      "year " + std::to_string(*record.year) +
                          " outside [1900, 2100]"});
  }
  const auto [it, inserted] = seen.emplace(record.id, line);
  if (!inserted) {
    issues.push_back({line, ErrorCode::kDuplicateId,
                      "duplicate id '" + record.id + "' (first seen on line " +
                          std::to_string(it->second) + ")"});
  }
}

std::optional<RawRecord> record_from_json(const json& obj, std::string& err) {
  if (!obj.is_object()) {
    err = "expected a JSON object";
    return std::nullopt;
  }
  auto required_string = [&](const char* key, std::string& dest) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      err = std::string("missing field \"") + key + "\"";
      return false;
    }
    if (!it->is_string()) {
      err = std::string("field \"") + key + "\" must be a string";
      return false;
    }
    dest = it->get<std::string>();
    return true;
  };
  auto optional_string = [&](const char* key, std::string& dest) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return true;
    if (!it->is_string()) {
      err = std::string("field \"") + key + "\" must be a string";
      return false;
    }
    dest = it->get<std::string>();
    return true;
  };

  RawRecord record;
  if (!required_string("id", record.id) ||
      !required_string("title", record.title) ||
      !optional_string("abstract", record.abstract) ||
      !optional_string("venue", record.venue)) {
    return std::nullopt;
  }
  if (record.id.empty()) {
    err = "field \"id\" is empty";
    return std::nullopt;
  }
  if (const auto it = obj.find("year"); it != obj.end() && !it->is_null()) {
    if (it->is_number_integer()) {
      record.year = it->get<int>();
    } else if (it->is_string()) {
      record.year = parse_year_text(it->get<std::string>(), err);
      if (!err.empty()) return std::nullopt;
    } else {
      err = "field \"year\" must be an integer";
      return std::nullopt;
    }
  }
  if (const auto it = obj.find("authors"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) {
      err = "field \"authors\" must be an array of strings";
      return std::nullopt;
    }
    for (const auto& author : *it) {
      if (!author.is_string()) {
        err = "field \"authors\" must be an array of strings";
        return std::nullopt;
      }
      record.author_ids.push_back(author.get<std::string>());
    }
  }
  return record;
}

std::vector<RawRecord> parse_jsonl(std::istream& in) {
  std::vector<RawRecord> records;
  std::vector<RowIssue> issues;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      issues.push_back({line_no, ErrorCode::kSchemaMismatch,
                        std::string("invalid JSON: ") + e.what()});
      continue;
    }
    std::string err;
    auto record = record_from_json(obj, err);
    if (!record) {
      issues.push_back({line_no, ErrorCode::kSchemaMismatch, err});
      continue;
    }
    validate_record(*record, line_no, seen, issues);
    records.push_back(std::move(*record));
  }
  if (!issues.empty()) throw RecordError(std::move(issues));
  return records;
}

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 style: quoted fields may contain commas, doubled quotes and
// newlines.
std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < content.size()) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool quoted = false;
    bool row_done = false;
    while (!row_done) {
      if (i >= content.size()) {
        if (quoted) {
          throw RecordError({{row.line, ErrorCode::kSchemaMismatch,
                              "unterminated quoted field"}});
        }
        row.fields.push_back(std::move(field));
        row_done = true;
        break;
      }
      const char c = content[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < content.size() && content[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        continue;
      }
      switch (c) {
        case '"':
          quoted = true;
          ++i;
          break;
        case ',':
          row.fields.push_back(std::move(field));
          field.clear();
          ++i;
          break;
        case '\r':
          ++i;
          break;
        case '\n':
          row.fields.push_back(std::move(field));
          ++line;
          ++i;
          row_done = true;
          break;
        default:
          field.push_back(c);
          ++i;
      }
    }
    const bool blank = row.fields.size() == 1 && trim(row.fields[0]).empty();
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> split_authors(std::string_view text) {
  std::vector<std::string> authors;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const auto piece = trim(text.substr(start, end - start));
    if (!piece.empty()) authors.emplace_back(piece);
    start = end + 1;
  }
  return authors;
}

std::vector<RawRecord> parse_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty()) return {};

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t c = 0; c < rows[0].fields.size(); ++c) {
    column.emplace(std::string(trim(rows[0].fields[c])), c);
  }
  for (const char* key : {"id", "title"}) {
    if (!column.count(key)) {
      throw RecordError({{rows[0].line, ErrorCode::kSchemaMismatch,
                          std::string("header lacks column \"") + key + "\""}});
    }
  }

  std::vector<RawRecord> records;
  std::vector<RowIssue> issues;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != rows[0].fields.size()) {
      issues.push_back({row.line, ErrorCode::kSchemaMismatch,
                        "expected " + std::to_string(rows[0].fields.size()) +
                            " fields, found " +
                            std::to_string(row.fields.size())});
      continue;
    }
    auto get = [&](const char* key) -> std::string {
      const auto it = column.find(key);
      return it == column.end() ? std::string() : row.fields[it->second];
    };
    RawRecord record;
    record.id = std::string(trim(get("id")));
    record.title = get("title");
    record.abstract = get("abstract");
    record.venue = std::string(trim(get("venue")));
    record.author_ids = split_authors(get("authors"));
    if (record.id.empty()) {
      issues.push_back({row.line, ErrorCode::kSchemaMismatch,
                        "field \"id\" is empty"});
      continue;
    }
    std::string err;
    record.year = parse_year_text(get("year"), err);
    if (!err.empty()) {
      issues.push_back({row.line, ErrorCode::kSchemaMismatch, err});
      continue;
    }
    validate_record(record, row.line, seen, issues);
    records.push_back(std::move(record));
  }
  if (!issues.empty()) throw RecordError(std::move(issues));
  return records;
}

std::vector<std::string> record_terms(const RawRecord& record,
                                      const Stoplist& stoplist) {
  std::string text = record.title;
  text.push_back(' ');
  text += record.abstract;
  return apply_stoplist(tokenize(text), stoplist);
}

EncodedDoc make_doc(const RawRecord& record, std::size_t index,
                    std::vector<TermId> tokens) {
  EncodedDoc doc;
  doc.doc_index = index;
  doc.id = record.id;
  doc.tokens = std::move(tokens);
  doc.venue = record.venue;
  doc.year = record.year;
  doc.entity_refs = record.author_ids;
  return doc;
}

constexpr const char* kEmptyReason = "no terms left after preprocessing";

}  // namespace

RecordError::RecordError(std::vector<RowIssue> issues)
    : Error(dominant_code(issues), issues_message(issues)),
      issues_(std::move(issues)) {}

std::optional<RecordFormat> format_from_extension(
    const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") {
    return RecordFormat::kJsonl;
  }
  if (ext == ".csv") return RecordFormat::kCsv;
  return std::nullopt;
}

std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format) {
  return format == RecordFormat::kJsonl ? parse_jsonl(in) : parse_csv(in);
}

std::vector<RawRecord> load_records(const std::filesystem::path& path,
                                    RecordFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound,
                "cannot open input file: " + path.string());
  }
  return parse_records(in, format);
}

Vocabulary::Vocabulary(std::vector<std::string> terms) {
  for (auto& term : terms) {
    if (find(term)) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "vocabulary term repeated: '" + term + "'");
    }
    add(term);
  }
}

TermId Vocabulary::add(std::string_view term) {
  if (const auto existing = find(term)) return *existing;
  const auto id = static_cast<TermId>(id_to_term_.size());
  id_to_term_.emplace_back(term);
  term_to_id_.emplace(id_to_term_.back(), id);
  return id;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  const auto it = term_to_id_.find(std::string(term));
  if (it == term_to_id_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::term(TermId id) const {
  if (id >= id_to_term_.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "term id " + std::to_string(id) + " out of range");
  }
  return id_to_term_[id];
}

Corpus::Corpus(Vocabulary vocab, std::vector<EncodedDoc> docs)
    : vocab_(std::move(vocab)), docs_(std::move(docs)) {
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const auto& doc = docs_[d];
    if (doc.doc_index != d) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "document " + std::to_string(d) + " has index " +
                      std::to_string(doc.doc_index));
    }
    if (doc.tokens.empty()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "document '" + doc.id + "' has no tokens");
    }
    for (const TermId t : doc.tokens) {
      if (t >= vocab_.size()) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "document '" + doc.id + "' references term id " +
                        std::to_string(t) + " >= V");
      }
    }
    total_tokens_ += doc.tokens.size();
  }
}

BuildResult build_corpus(std::span<const RawRecord> records,
                         const Stoplist& stoplist,
                         std::size_t min_term_count) {
  if (min_term_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_term_count must be >= 1");
  }
  std::vector<std::vector<std::string>> terms;
  terms.reserve(records.size());
  std::unordered_map<std::string, std::size_t> frequency;
  for (const auto& record : records) {
    terms.push_back(record_terms(record, stoplist));
    for (const auto& term : terms.back()) ++frequency[term];
  }

  Vocabulary vocab;
  std::vector<EncodedDoc> docs;
  std::vector<DroppedDocument> dropped;
  for (std::size_t r = 0; r < records.size(); ++r) {
    std::vector<TermId> tokens;
    for (const auto& term : terms[r]) {
      if (frequency[term] >= min_term_count) tokens.push_back(vocab.add(term));
    }
    if (tokens.empty()) {
      dropped.push_back({records[r].id, kEmptyReason});
      continue;
    }
    docs.push_back(make_doc(records[r], docs.size(), std::move(tokens)));
  }
  if (docs.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "all " + std::to_string(records.size()) +
                    " documents are empty after preprocessing");
  }
  return {Corpus(std::move(vocab), std::move(docs)), std::move(dropped)};
}

BuildResult encode_with_vocabulary(std::span<const RawRecord> records,
                                   const Stoplist& stoplist,
                                   const Vocabulary& vocab) {
  std::vector<EncodedDoc> docs;
  std::vector<DroppedDocument> dropped;
  for (const auto& record : records) {
    std::vector<TermId> tokens;
    for (const auto& term : record_terms(record, stoplist)) {
      if (const auto id = vocab.find(term)) tokens.push_back(*id);
    }
    if (tokens.empty()) {
      dropped.push_back({record.id, "no in-vocabulary terms"});
      continue;
    }
    docs.push_back(make_doc(record, docs.size(), std::move(tokens)));
  }
  return {Corpus(vocab, std::move(docs)), std::move(dropped)};
}

}  // namespace scholarlda
