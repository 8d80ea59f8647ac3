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

#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "scholarlda/cli.hpp"

namespace scholarlda::testing {

std::string term_name(std::size_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "w%03zu", id);
  return buf;
}

Vocabulary numbered_vocab(std::size_t V) {
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < V; ++i) terms.push_back(term_name(i));
  return Vocabulary(std::move(terms));
}

Corpus make_meta_corpus(const std::vector<DocSpec>& specs, std::size_t V) {
  std::vector<EncodedDoc> docs;
  for (std::size_t d = 0; d < specs.size(); ++d) {
    EncodedDoc doc;
    doc.doc_index = d;
    doc.id = "d" + std::to_string(d);
    doc.tokens = specs[d].tokens;
    doc.venue = specs[d].venue;
    doc.year = specs[d].year;
    doc.entity_refs = specs[d].authors;
    docs.push_back(std::move(doc));
  }
  return Corpus(numbered_vocab(V), std::move(docs));
}

Corpus make_corpus(const std::vector<std::vector<TermId>>& docs, std::size_t V) {
  std::vector<DocSpec> specs;
  for (const auto& tokens : docs) specs.push_back({tokens});
  return make_meta_corpus(specs, V);
}

Corpus random_corpus(std::size_t docs, std::size_t V, std::size_t min_len,
                     std::size_t max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(min_len, max_len);
  std::uniform_int_distribution<TermId> word(0, static_cast<TermId>(V - 1));
  std::vector<std::vector<TermId>> out(docs);
  for (auto& doc : out) {
    doc.resize(length(rng));
    for (auto& w : doc) w = word(rng);
  }
  return make_corpus(out, V);
}

SyntheticData disjoint_topics(std::size_t K, std::size_t V, std::size_t docs,
                              std::size_t tokens_per_doc,
                              std::size_t heldout_docs,
                              double doc_concentration, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t width = V / K;
  std::vector<double> phi(K * V, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t w = k * width; w < (k + 1) * width; ++w) {
      phi[k * V + w] = 1.0 / static_cast<double>(width);
    }
  }
  std::gamma_distribution<double> gamma(doc_concentration, 1.0);
  std::uniform_int_distribution<std::size_t> offset(0, width - 1);

  auto draw_docs = [&](std::size_t count) {
    std::vector<std::vector<TermId>> out(count);
    std::vector<double> theta(K);
    for (auto& doc : out) {
      double total = 0.0;
      for (auto& t : theta) total += (t = gamma(rng) + 1e-300);
      for (auto& t : theta) t /= total;
      std::discrete_distribution<std::size_t> topic(theta.begin(), theta.end());
      doc.resize(tokens_per_doc);
      for (auto& w : doc) {
        w = static_cast<TermId>(topic(rng) * width + offset(rng));
      }
    }
    return out;
  };
  auto train_docs = draw_docs(docs);
  auto test_docs = draw_docs(heldout_docs);
  return {make_corpus(train_docs, V), make_corpus(test_docs, V), std::move(phi)};
}

double greedy_matched_cosine(const std::vector<double>& recovered,
                             const std::vector<double>& truth, std::size_t K,
                             std::size_t V) {
  auto cosine = [&](std::size_t a, std::size_t b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t w = 0; w < V; ++w) {
      const double x = recovered[a * V + w];
      const double y = truth[b * V + w];
      dot += x * y;
      na += x * x;
      nb += y * y;
    }
    return dot / std::sqrt(na * nb);
  };
  struct Pair {
    double sim;
    std::size_t a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < K; ++a) {
    for (std::size_t b = 0; b < K; ++b) pairs.push_back({cosine(a, b), a, b});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& x, const Pair& y) { return x.sim > y.sim; });
  std::vector<bool> used_a(K), used_b(K);
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& p : pairs) {
    if (used_a[p.a] || used_b[p.b]) continue;
    used_a[p.a] = used_b[p.b] = true;
    sum += p.sim;
    ++matched;
  }
  return sum / static_cast<double>(matched);
}

std::vector<double> oracle_conditional(
    const std::vector<std::vector<TermId>>& words,
    const std::vector<std::vector<Count>>& z, std::size_t V, std::size_t K,
    double alpha, double beta, std::size_t doc, std::size_t pos) {
  const TermId w = words[doc][pos];
  std::vector<double> out(K);
  for (std::size_t k = 0; k < K; ++k) {
    double n_wk = 0.0, n_k = 0.0, n_dk = 0.0;
    for (std::size_t d = 0; d < words.size(); ++d) {
      for (std::size_t n = 0; n < words[d].size(); ++n) {
        if (d == doc && n == pos) continue;
        if (static_cast<std::size_t>(z[d][n]) != k) continue;
        n_k += 1.0;
        if (words[d][n] == w) n_wk += 1.0;
        if (d == doc) n_dk += 1.0;
      }
    }
    double beta_sum = 0.0;
    for (std::size_t v = 0; v < V; ++v) beta_sum += beta;
    out[k] = (n_wk + beta) / (n_k + beta_sum) * (n_dk + alpha);
  }
  return out;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

TempDir::TempDir() {
  std::string pattern =
      (std::filesystem::temp_directory_path() / "scholarlda-test-XXXXXX").string();
  if (::mkdtemp(pattern.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::filesystem::path TempDir::write(const std::string& name,
                                     const std::string& content) const {
  const auto p = file(name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult result;
  result.code = cli::run(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::vector<std::vector<std::string>> parse_simple_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace scholarlda::testing
