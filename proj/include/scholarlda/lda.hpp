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

// LDA trained by collapsed Gibbs sampling.
//
// The sampler keeps the corpus in a flat layout (one contiguous array of
// word ids and one of topic assignments, indexed through per-document
// offsets) together with the four count aggregates the conditional needs:
//
//   n_wk  V x K   tokens of word w assigned to topic k
//   n_dk  M x K   tokens of document d assigned to topic k
//   n_k   K       tokens assigned to topic k
//   n_d   M       document lengths
//
// A token is resampled from
//
//   p(z = k | rest) ~ (n_wk[w][k] + beta) / (n_k[k] + V * beta)
//                     * (n_dk[d][k] + alpha)
//
// with the current token excluded from all counts.

#ifndef SCHOLARLDA_LDA_HPP_
#define SCHOLARLDA_LDA_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scholarlda/corpus.hpp"

namespace scholarlda {

using Count = std::int32_t;

struct Hyperparams {
  std::size_t num_topics = 100;
  double alpha = 0.01;
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 200;
  std::uint64_t seed = 42;

  // Throws Error(kInvalidArgument) unless K >= 1, alpha > 0, beta > 0 and
  // burn_in < iterations.
  void validate() const;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

// Name of the pseudo-random generator recorded in model files. Uniform
// variates are taken as the top 53 bits of each 64-bit output, so a given
// seed yields the same draws on every platform.
inline constexpr const char* kGeneratorName = "mt19937_64/u53";

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n - 1}; n >= 1.
  std::size_t below(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  std::mt19937_64 engine_;
};

struct SamplerState {
  std::size_t num_topics = 0;
  std::size_t vocab_size = 0;

  std::vector<std::size_t> doc_offsets;  // M + 1 entries
  std::vector<TermId> words;
  std::vector<Count> z;

  std::vector<Count> n_wk;  // row-major V x K
  std::vector<Count> n_dk;  // row-major M x K
  std::vector<Count> n_k;
  std::vector<Count> n_d;

  Generator rng{0};

  std::size_t num_docs() const noexcept { return n_d.size(); }
  std::size_t num_tokens() const noexcept { return words.size(); }
  std::size_t doc_length(std::size_t d) const {
    return doc_offsets[d + 1] - doc_offsets[d];
  }
  std::size_t token_index(std::size_t d, std::size_t pos) const {
    return doc_offsets[d] + pos;
  }
  std::span<const Count> doc_assignments(std::size_t d) const {
    return {z.data() + doc_offsets[d], doc_length(d)};
  }

  Count& word_topic(std::size_t w, std::size_t k) {
    return n_wk[w * num_topics + k];
  }
  Count word_topic(std::size_t w, std::size_t k) const {
    return n_wk[w * num_topics + k];
  }
  Count& doc_topic(std::size_t d, std::size_t k) {
    return n_dk[d * num_topics + k];
  }
  Count doc_topic(std::size_t d, std::size_t k) const {
    return n_dk[d * num_topics + k];
  }
};

// Every token gets a topic drawn uniformly from the seeded generator.
SamplerState init_state(const Corpus& corpus, const Hyperparams& hp);

// Builds a state from explicit assignments (one vector per document) and
// recomputes all aggregates. Used to set up exact scenarios.
SamplerState state_from_assignments(const Corpus& corpus,
                                    const std::vector<std::vector<Count>>& z,
                                    const Hyperparams& hp);

// Recomputes n_wk, n_dk, n_k and n_d from z.
void recount(SamplerState& state);

// Throws Error(kInvariantViolation) describing the first broken count
// identity, or a count that is negative or inconsistent with z.
void check_invariants(const SamplerState& state);

// Removes the token at (doc, pos) from every aggregate. z keeps its old
// value until assign_token is called.
void remove_token(SamplerState& state, std::size_t doc, std::size_t pos);
void assign_token(SamplerState& state, std::size_t doc, std::size_t pos,
                  std::size_t topic);

// Unnormalized conditional for the token at (doc, pos), which must already
// be removed from the counts. `out` must hold K entries.
void conditional_weights(const SamplerState& state, const Hyperparams& hp,
                         std::size_t doc, std::size_t pos,
                         std::span<double> out);
std::vector<double> conditional_weights(const SamplerState& state,
                                        const Hyperparams& hp,
                                        std::size_t doc, std::size_t pos);

// Inverse-CDF draw from unnormalized weights with a single uniform.
std::size_t sample_index(std::span<const double> weights, double uniform);

// One pass over all tokens in (doc, position) order.
void gibbs_sweep(SamplerState& state, const Hyperparams& hp);

// Collapsed log joint log p(w, z | alpha, beta), computed from the counts.
double log_likelihood(const SamplerState& state, const Hyperparams& hp);

struct TopicModel {
  Hyperparams hyperparams;
  Vocabulary vocab;
  std::size_t num_docs = 0;
  std::vector<double> phi;    // row-major K x V
  std::vector<double> theta;  // row-major M x K
  std::string corpus_fingerprint;
  std::string generator = kGeneratorName;
  double log_likelihood = 0.0;

  std::size_t num_topics() const noexcept { return hyperparams.num_topics; }
  std::size_t vocab_size() const noexcept { return vocab.size(); }

  double phi_at(std::size_t k, std::size_t w) const {
    return phi[k * vocab_size() + w];
  }
  double theta_at(std::size_t d, std::size_t k) const {
    return theta[d * num_topics() + k];
  }
  std::span<const double> phi_row(std::size_t k) const {
    return {phi.data() + k * vocab_size(), vocab_size()};
  }
  std::span<const double> theta_row(std::size_t d) const {
    return {theta.data() + d * num_topics(), num_topics()};
  }
};

// Point estimates from the counts of a single state.
TopicModel estimate(const SamplerState& state, const Hyperparams& hp,
                    const Vocabulary& vocab);

// Model with every phi and theta row uniform; its perplexity is exactly V,
// the baseline any trained model should beat.
TopicModel uniform_model(const Vocabulary& vocab, const Hyperparams& hp,
                         std::size_t num_docs);

struct ProgressRecord {
  std::size_t iteration = 0;  // sweeps completed
  double log_likelihood = 0.0;
  bool after_burn_in = false;
};

struct TrainOptions {
  // Emit a progress record every `log_interval` sweeps (0 disables). The
  // last sweep is always reported when logging is enabled.
  std::size_t log_interval = 0;
  std::function<void(const ProgressRecord&)> on_progress;
};

TopicModel train(const Corpus& corpus, const Hyperparams& hp,
                 const TrainOptions& options = {});

struct ChainResult {
  TopicModel model;
  std::size_t chain = 0;
  std::vector<double> final_log_likelihoods;
};

// Runs `chains` independent chains in parallel, chain i seeded with
// hp.seed + i, and keeps the one with the highest final log-likelihood
// (lowest chain index on ties). Progress is reported for chain 0 only.
ChainResult train_chains(const Corpus& corpus, const Hyperparams& hp,
                         std::size_t chains, const TrainOptions& options = {});

struct FoldInOptions {
  std::size_t sweeps = 100;
  std::size_t burn_in = 20;
  std::uint64_t seed = 42;
};

// Estimates document-topic proportions for unseen documents with phi held
// fixed, averaging over the sweeps after burn-in. Row-major M x K.
std::vector<double> fold_in(const TopicModel& model, const Corpus& heldout,
                            const FoldInOptions& options = {});

// exp(-sum log p(w) / N) with p(w) = sum_k theta[d][k] * phi[k][w] and theta
// obtained by fold_in. Throws kIncompatibleVocabulary when the held-out
// vocabulary differs from the model's and kEmptySelection when there is
// nothing to evaluate.
double perplexity(const TopicModel& model, const Corpus& heldout,
                  const FoldInOptions& options = {});

}  // namespace scholarlda

#endif  // SCHOLARLDA_LDA_HPP_
