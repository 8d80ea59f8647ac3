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

#include "scholarlda/io.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scholarlda {
namespace {

using nlohmann::json;

constexpr const char* kCorpusFormat = "scholarlda-corpus";
constexpr const char* kModelFormat = "scholarlda-model";

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

json doc_to_json(const EncodedDoc& doc) {
  json j = json::object();
  j["id"] = doc.id;
  j["venue"] = doc.venue;
  j["year"] = doc.year ? json(*doc.year) : json(nullptr);
  j["authors"] = doc.entity_refs;
  j["tokens"] = doc.tokens;
  return j;
}

std::string vocabulary_json(const Vocabulary& vocab) {
  return json(std::vector<std::string>(vocab.terms().begin(),
                                       vocab.terms().end()))
      .dump();
}

std::string number_row(std::span<const double> row) {
  std::string out = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += format_double(row[i]);
  }
  out += ']';
  return out;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

void expect_format(const json& root, const char* format, int version) {
  if (!root.is_object() || root.value("format", "") != format) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string("not a ") + format + " file");
  }
  if (root.value("schema_version", -1) != version) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string("unsupported ") + format + " schema version");
  }
}

template <typename F>
auto with_schema_errors(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<double> read_matrix(const json& rows, std::size_t n_rows,
                                std::size_t n_cols, const char* name) {
  if (!rows.is_array() || rows.size() != n_rows) {
    throw Error(ErrorCode::kSchemaMismatch,
                std::string(name) + " has the wrong number of rows");
  }
  std::vector<double> flat;
  flat.reserve(n_rows * n_cols);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n_cols) {
      throw Error(ErrorCode::kSchemaMismatch,
                  std::string(name) + " has a row of the wrong length");
    }
    for (const auto& v : row) flat.push_back(v.get<double>());
  }
  return flat;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error(ErrorCode::kIoError, "number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string corpus_fingerprint(const Corpus& corpus) {
  std::string canonical = vocabulary_json(corpus.vocab());
  for (const auto& doc : corpus.docs()) {
    canonical += '\n';
    canonical += doc_to_json(doc).dump();
  }
  return "sha256:" + sha256_hex(canonical);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out = "{\n";
  out += "  \"format\": \"" + std::string(kCorpusFormat) + "\",\n";
  out += "  \"schema_version\": " + std::to_string(kCorpusSchemaVersion) + ",\n";
  out += "  \"fingerprint\": \"" + corpus_fingerprint(corpus) + "\",\n";
  out += "  \"num_docs\": " + std::to_string(corpus.num_docs()) + ",\n";
  out += "  \"vocab_size\": " + std::to_string(corpus.vocab_size()) + ",\n";
  out += "  \"total_tokens\": " + std::to_string(corpus.total_tokens()) + ",\n";
  out += "  \"vocabulary\": " + vocabulary_json(corpus.vocab()) + ",\n";
  out += "  \"documents\": [";
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    out += d ? ",\n    " : "\n    ";
    out += doc_to_json(corpus.doc(d)).dump();
  }
  out += corpus.num_docs() ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

Corpus parse_corpus(std::string_view text) {
  const json root = parse_json(text, "corpus file");
  expect_format(root, kCorpusFormat, kCorpusSchemaVersion);
  Corpus corpus = with_schema_errors("corpus file", [&] {
    Vocabulary vocab(root.at("vocabulary").get<std::vector<std::string>>());
    std::vector<EncodedDoc> docs;
    for (const auto& j : root.at("documents")) {
      EncodedDoc doc;
      doc.doc_index = docs.size();
      doc.id = j.at("id").get<std::string>();
      doc.venue = j.at("venue").get<std::string>();
      if (!j.at("year").is_null()) doc.year = j.at("year").get<int>();
      doc.entity_refs = j.at("authors").get<std::vector<std::string>>();
      doc.tokens = j.at("tokens").get<std::vector<TermId>>();
      docs.push_back(std::move(doc));
    }
    return Corpus(std::move(vocab), std::move(docs));
  });
  if (const auto it = root.find("fingerprint"); it != root.end()) {
    if (!it->is_string() || it->get<std::string>() != corpus_fingerprint(corpus)) {
      throw Error(ErrorCode::kFingerprintMismatch,
                  "corpus file content does not match its recorded fingerprint");
    }
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

std::string serialize_model(const TopicModel& model) {
  const auto& hp = model.hyperparams;
  const std::size_t K = model.num_topics();
  std::string out = "{\n";
  out += "  \"format\": \"" + std::string(kModelFormat) + "\",\n";
  out += "  \"schema_version\": " + std::to_string(kModelSchemaVersion) + ",\n";
  out += "  \"generator\": " +
         json{{"name", model.generator}, {"seed", hp.seed}}.dump() + ",\n";
  json hyper = json::object();
  hyper["topics"] = hp.num_topics;
  hyper["alpha"] = hp.alpha;
  hyper["beta"] = hp.beta;
  hyper["iterations"] = hp.iterations;
  hyper["burn_in"] = hp.burn_in;
  out += "  \"hyperparams\": " + hyper.dump() + ",\n";
  out += "  \"corpus_fingerprint\": " + json(model.corpus_fingerprint).dump() + ",\n";
  out += "  \"num_docs\": " + std::to_string(model.num_docs) + ",\n";
  out += "  \"vocab_size\": " + std::to_string(model.vocab_size()) + ",\n";
  out += "  \"log_likelihood\": " + format_double(model.log_likelihood) + ",\n";
  out += "  \"vocabulary\": " + vocabulary_json(model.vocab) + ",\n";
  out += "  \"phi\": [";
  for (std::size_t k = 0; k < K; ++k) {
    out += k ? ",\n    " : "\n    ";
    out += number_row(model.phi_row(k));
  }
  out += "\n  ],\n";
  out += "  \"theta\": [";
  for (std::size_t d = 0; d < model.num_docs; ++d) {
    out += d ? ",\n    " : "\n    ";
    out += number_row(model.theta_row(d));
  }
  out += model.num_docs ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

TopicModel parse_model(std::string_view text) {
  const json root = parse_json(text, "model file");
  expect_format(root, kModelFormat, kModelSchemaVersion);
  return with_schema_errors("model file", [&] {
    TopicModel model;
    const auto& hyper = root.at("hyperparams");
    model.hyperparams.num_topics = hyper.at("topics").get<std::size_t>();
    model.hyperparams.alpha = hyper.at("alpha").get<double>();
    model.hyperparams.beta = hyper.at("beta").get<double>();
    model.hyperparams.iterations = hyper.at("iterations").get<std::size_t>();
    model.hyperparams.burn_in = hyper.at("burn_in").get<std::size_t>();
    model.hyperparams.seed = root.at("generator").at("seed").get<std::uint64_t>();
    model.generator = root.at("generator").at("name").get<std::string>();
    model.corpus_fingerprint = root.at("corpus_fingerprint").get<std::string>();
    model.num_docs = root.at("num_docs").get<std::size_t>();
    model.log_likelihood = root.at("log_likelihood").get<double>();
    model.vocab = Vocabulary(root.at("vocabulary").get<std::vector<std::string>>());
    const std::size_t K = model.num_topics();
    model.phi = read_matrix(root.at("phi"), K, model.vocab_size(), "phi");
    model.theta = read_matrix(root.at("theta"), model.num_docs, K, "theta");
    return model;
  });
}

TopicModel load_model(const std::filesystem::path& path) {
  return parse_model(read_file(path));
}

void require_same_corpus(const TopicModel& model, const Corpus& corpus) {
  const std::string actual = corpus_fingerprint(corpus);
  if (model.corpus_fingerprint != actual) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "model was trained on corpus " + model.corpus_fingerprint +
                    " but the given corpus is " + actual);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIoError, "cannot write file: " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIoError, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::kIoError,
                "cannot move " + tmp.string() + " to " + path.string() + ": " +
                    ec.message());
  }
}

}  // namespace scholarlda
