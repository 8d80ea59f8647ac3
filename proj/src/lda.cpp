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

#include "scholarlda/lda.hpp"

#include "scholarlda/io.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace scholarlda {
namespace {

[[noreturn]] void invariant_failure(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

void check_position(const SamplerState& state, std::size_t doc,
                    std::size_t pos) {
  if (doc >= state.num_docs()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "document " + std::to_string(doc) + " out of range");
  }
  if (pos >= state.doc_length(doc)) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "position " + std::to_string(pos) + " out of range for document " +
                    std::to_string(doc));
  }
}

SamplerState layout(const Corpus& corpus, const Hyperparams& hp) {
  if (corpus.num_docs() == 0) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot sample an empty corpus");
  }
  hp.validate();
  SamplerState state;
  state.num_topics = hp.num_topics;
  state.vocab_size = corpus.vocab_size();
  state.doc_offsets.reserve(corpus.num_docs() + 1);
  state.doc_offsets.push_back(0);
  state.words.reserve(corpus.total_tokens());
  for (const auto& doc : corpus.docs()) {
    state.words.insert(state.words.end(), doc.tokens.begin(), doc.tokens.end());
    state.doc_offsets.push_back(state.words.size());
  }
  state.z.assign(state.words.size(), 0);
  state.rng = Generator(hp.seed);
  return state;
}

}  // namespace

void Hyperparams::validate() const {
  if (num_topics < 1) {
    throw Error(ErrorCode::kInvalidArgument, "topic count must be >= 1");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be > 0");
  }
  if (burn_in >= iterations) {
    throw Error(ErrorCode::kInvalidArgument,
                "burn-in must be smaller than the iteration count");
  }
}

void recount(SamplerState& state) {
  const std::size_t K = state.num_topics;
  state.n_wk.assign(state.vocab_size * K, 0);
  state.n_dk.assign((state.doc_offsets.size() - 1) * K, 0);
  state.n_k.assign(K, 0);
  state.n_d.assign(state.doc_offsets.size() - 1, 0);
  for (std::size_t d = 0; d + 1 < state.doc_offsets.size(); ++d) {
    for (std::size_t i = state.doc_offsets[d]; i < state.doc_offsets[d + 1];
         ++i) {
      const auto k = static_cast<std::size_t>(state.z[i]);
      if (k >= K) invariant_failure("assignment outside 0..K-1");
      ++state.word_topic(state.words[i], k);
      ++state.doc_topic(d, k);
      ++state.n_k[k];
      ++state.n_d[d];
    }
  }
}

SamplerState init_state(const Corpus& corpus, const Hyperparams& hp) {
  SamplerState state = layout(corpus, hp);
  for (auto& topic : state.z) {
    topic = static_cast<Count>(state.rng.below(hp.num_topics));
  }
  recount(state);
  return state;
}

SamplerState state_from_assignments(const Corpus& corpus,
                                    const std::vector<std::vector<Count>>& z,
                                    const Hyperparams& hp) {
  SamplerState state = layout(corpus, hp);
  if (z.size() != corpus.num_docs()) {
    throw Error(ErrorCode::kInvalidArgument, "one assignment row per document");
  }
  for (std::size_t d = 0; d < z.size(); ++d) {
    if (z[d].size() != state.doc_length(d)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "assignment row length differs from document length");
    }
    for (std::size_t pos = 0; pos < z[d].size(); ++pos) {
      if (z[d][pos] < 0 || static_cast<std::size_t>(z[d][pos]) >= hp.num_topics) {
        throw Error(ErrorCode::kInvalidArgument, "assignment outside 0..K-1");
      }
      state.z[state.token_index(d, pos)] = z[d][pos];
    }
  }
  recount(state);
  return state;
}

void check_invariants(const SamplerState& state) {
  const std::size_t K = state.num_topics;
  const std::size_t M = state.num_docs();
  if (state.n_wk.size() != state.vocab_size * K || state.n_dk.size() != M * K ||
      state.n_k.size() != K || state.doc_offsets.size() != M + 1 ||
      state.z.size() != state.words.size()) {
    invariant_failure("count arrays have inconsistent shapes");
  }
  for (const Count c : state.n_wk) {
    if (c < 0) invariant_failure("negative word-topic count");
  }
  for (const Count c : state.n_dk) {
    if (c < 0) invariant_failure("negative document-topic count");
  }

  std::int64_t doc_total = 0;
  for (std::size_t d = 0; d < M; ++d) {
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < K; ++k) sum += state.doc_topic(d, k);
    if (sum != state.n_d[d]) {
      invariant_failure("sum_k n_dk != n_d for document " + std::to_string(d));
    }
    if (static_cast<std::size_t>(state.n_d[d]) != state.doc_length(d)) {
      invariant_failure("n_d disagrees with document length for document " +
                        std::to_string(d));
    }
    doc_total += state.n_d[d];
  }
  std::int64_t topic_total = 0;
  for (std::size_t k = 0; k < K; ++k) {
    std::int64_t sum = 0;
    for (std::size_t w = 0; w < state.vocab_size; ++w) {
      sum += state.word_topic(w, k);
    }
    if (sum != state.n_k[k]) {
      invariant_failure("sum_w n_wk != n_k for topic " + std::to_string(k));
    }
    if (state.n_k[k] < 0) invariant_failure("negative topic count");
    topic_total += state.n_k[k];
  }
  const auto total = static_cast<std::int64_t>(state.num_tokens());
  if (doc_total != total || topic_total != total) {
    invariant_failure("grand totals differ from token count");
  }

  // The aggregates must also agree with z itself, not just with each other.
  SamplerState fresh;
  fresh.num_topics = K;
  fresh.vocab_size = state.vocab_size;
  fresh.doc_offsets = state.doc_offsets;
  fresh.words = state.words;
  fresh.z = state.z;
  recount(fresh);
  if (fresh.n_wk != state.n_wk || fresh.n_dk != state.n_dk ||
      fresh.n_k != state.n_k) {
    invariant_failure("counts disagree with topic assignments");
  }
}

void remove_token(SamplerState& state, std::size_t doc, std::size_t pos) {
  check_position(state, doc, pos);
  const std::size_t i = state.token_index(doc, pos);
  const auto k = static_cast<std::size_t>(state.z[i]);
  --state.word_topic(state.words[i], k);
  --state.doc_topic(doc, k);
  --state.n_k[k];
  --state.n_d[doc];
}

void assign_token(SamplerState& state, std::size_t doc, std::size_t pos,
                  std::size_t topic) {
  check_position(state, doc, pos);
  if (topic >= state.num_topics) {
    throw Error(ErrorCode::kIndexOutOfRange, "topic out of range");
  }
  const std::size_t i = state.token_index(doc, pos);
  state.z[i] = static_cast<Count>(topic);
  ++state.word_topic(state.words[i], topic);
  ++state.doc_topic(doc, topic);
  ++state.n_k[topic];
  ++state.n_d[doc];
}

void conditional_weights(const SamplerState& state, const Hyperparams& hp,
                         std::size_t doc, std::size_t pos,
                         std::span<double> out) {
  check_position(state, doc, pos);
  const std::size_t K = state.num_topics;
  if (out.size() != K) {
    throw Error(ErrorCode::kInvalidArgument, "weight buffer must hold K values");
  }
  const TermId w = state.words[state.token_index(doc, pos)];
  const double v_beta = static_cast<double>(state.vocab_size) * hp.beta;
  const Count* word_row = state.n_wk.data() + w * K;
  const Count* doc_row = state.n_dk.data() + doc * K;
  for (std::size_t k = 0; k < K; ++k) {
    out[k] = (word_row[k] + hp.beta) / (state.n_k[k] + v_beta) *
             (doc_row[k] + hp.alpha);
  }
}

std::vector<double> conditional_weights(const SamplerState& state,
                                        const Hyperparams& hp,
                                        std::size_t doc, std::size_t pos) {
  std::vector<double> out(state.num_topics);
  conditional_weights(state, hp, doc, pos, out);
  return out;
}

std::size_t sample_index(std::span<const double> weights, double uniform) {
  double total = 0.0;
  for (const double w : weights) total += w;
  const double target = uniform * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cumulative += weights[k];
    if (target < cumulative) return k;
  }
  return weights.size() - 1;
}

void gibbs_sweep(SamplerState& state, const Hyperparams& hp) {
  const std::size_t K = state.num_topics;
  const double v_beta = static_cast<double>(state.vocab_size) * hp.beta;
  std::vector<double> cumulative(K);

  // Inlined remove / weigh / draw / assign. Must stay equivalent to
  // conditional_weights + sample_index: the determinism tests compare the
  // two paths.
  for (std::size_t d = 0; d < state.num_docs(); ++d) {
    Count* doc_row = state.n_dk.data() + d * K;
    for (std::size_t i = state.doc_offsets[d]; i < state.doc_offsets[d + 1];
         ++i) {
      const TermId w = state.words[i];
      Count* word_row = state.n_wk.data() + static_cast<std::size_t>(w) * K;
      const auto old_topic = static_cast<std::size_t>(state.z[i]);
      --word_row[old_topic];
      --doc_row[old_topic];
      --state.n_k[old_topic];

      double total = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        total += (word_row[k] + hp.beta) / (state.n_k[k] + v_beta) *
                 (doc_row[k] + hp.alpha);
        cumulative[k] = total;
      }
      const double target = state.rng.uniform() * total;
      std::size_t new_topic = K - 1;
      for (std::size_t k = 0; k < K; ++k) {
        if (target < cumulative[k]) {
          new_topic = k;
          break;
        }
      }

      state.z[i] = static_cast<Count>(new_topic);
      ++word_row[new_topic];
      ++doc_row[new_topic];
      ++state.n_k[new_topic];
    }
  }
}

double log_likelihood(const SamplerState& state, const Hyperparams& hp) {
  const std::size_t K = state.num_topics;
  const std::size_t M = state.num_docs();
  const auto V = static_cast<double>(state.vocab_size);
  const double lg_beta = std::lgamma(hp.beta);
  const double lg_alpha = std::lgamma(hp.alpha);

  // log p(w | z): one Dirichlet-multinomial per topic.
  double ll = static_cast<double>(K) * (std::lgamma(V * hp.beta) - V * lg_beta);
  for (std::size_t k = 0; k < K; ++k) {
    ll -= std::lgamma(state.n_k[k] + V * hp.beta);
  }
  for (const Count c : state.n_wk) {
    // Zero counts contribute lgamma(beta), folded in below.
    if (c > 0) ll += std::lgamma(c + hp.beta) - lg_beta;
  }
  ll += static_cast<double>(state.n_wk.size()) * lg_beta;

  // log p(z): one Dirichlet-multinomial per document.
  const auto Kd = static_cast<double>(K);
  ll += static_cast<double>(M) * (std::lgamma(Kd * hp.alpha) - Kd * lg_alpha);
  for (std::size_t d = 0; d < M; ++d) {
    ll -= std::lgamma(state.n_d[d] + Kd * hp.alpha);
  }
  for (const Count c : state.n_dk) {
    if (c > 0) ll += std::lgamma(c + hp.alpha) - lg_alpha;
  }
  ll += static_cast<double>(state.n_dk.size()) * lg_alpha;
  return ll;
}

TopicModel estimate(const SamplerState& state, const Hyperparams& hp,
                    const Vocabulary& vocab) {
  const std::size_t K = state.num_topics;
  const std::size_t V = state.vocab_size;
  const std::size_t M = state.num_docs();
  TopicModel model;
  model.hyperparams = hp;
  model.vocab = vocab;
  model.num_docs = M;
  model.phi.resize(K * V);
  model.theta.resize(M * K);
  const double v_beta = static_cast<double>(V) * hp.beta;
  for (std::size_t k = 0; k < K; ++k) {
    const double denom = state.n_k[k] + v_beta;
    for (std::size_t w = 0; w < V; ++w) {
      model.phi[k * V + w] = (state.word_topic(w, k) + hp.beta) / denom;
    }
  }
  const double k_alpha = static_cast<double>(K) * hp.alpha;
  for (std::size_t d = 0; d < M; ++d) {
    const double denom = state.n_d[d] + k_alpha;
    for (std::size_t k = 0; k < K; ++k) {
      model.theta[d * K + k] = (state.doc_topic(d, k) + hp.alpha) / denom;
    }
  }
  model.log_likelihood = log_likelihood(state, hp);
  return model;
}

TopicModel uniform_model(const Vocabulary& vocab, const Hyperparams& hp,
                         std::size_t num_docs) {
  TopicModel model;
  model.hyperparams = hp;
  model.vocab = vocab;
  model.num_docs = num_docs;
  model.phi.assign(hp.num_topics * vocab.size(),
                   1.0 / static_cast<double>(vocab.size()));
  model.theta.assign(num_docs * hp.num_topics,
                     1.0 / static_cast<double>(hp.num_topics));
  return model;
}

TopicModel train(const Corpus& corpus, const Hyperparams& hp,
                 const TrainOptions& options) {
  SamplerState state = init_state(corpus, hp);
  for (std::size_t iter = 1; iter <= hp.iterations; ++iter) {
    gibbs_sweep(state, hp);
    const bool report =
        options.log_interval > 0 && options.on_progress &&
        (iter % options.log_interval == 0 || iter == hp.iterations);
    if (report) {
      options.on_progress({iter, log_likelihood(state, hp), iter > hp.burn_in});
    }
  }
  TopicModel model = estimate(state, hp, corpus.vocab());
  model.corpus_fingerprint = corpus_fingerprint(corpus);
  return model;
}

ChainResult train_chains(const Corpus& corpus, const Hyperparams& hp,
                         std::size_t chains, const TrainOptions& options) {
  if (chains < 1) {
    throw Error(ErrorCode::kInvalidArgument, "chain count must be >= 1");
  }
  hp.validate();
  std::vector<TopicModel> models(chains);
  std::vector<std::exception_ptr> failures(chains);
  auto run = [&](std::size_t c) {
    try {
      Hyperparams chain_hp = hp;
      chain_hp.seed = hp.seed + c;
      models[c] = train(corpus, chain_hp, c == 0 ? options : TrainOptions{});
    } catch (...) {
      failures[c] = std::current_exception();
    }
  };
  if (chains == 1) {
    run(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(chains);
    for (std::size_t c = 0; c < chains; ++c) workers.emplace_back(run, c);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  ChainResult result;
  for (std::size_t c = 0; c < chains; ++c) {
    result.final_log_likelihoods.push_back(models[c].log_likelihood);
    if (models[c].log_likelihood > models[result.chain].log_likelihood) {
      result.chain = c;
    }
  }
  result.model = std::move(models[result.chain]);
  return result;
}

std::vector<double> fold_in(const TopicModel& model, const Corpus& heldout,
                            const FoldInOptions& options) {
  if (options.burn_in >= options.sweeps) {
    throw Error(ErrorCode::kInvalidArgument,
                "fold-in burn-in must be smaller than the sweep count");
  }
  const std::size_t K = model.num_topics();
  const std::size_t V = model.vocab_size();
  const double alpha = model.hyperparams.alpha;
  Generator rng(options.seed);

  std::vector<double> theta(heldout.num_docs() * K, 0.0);
  std::vector<double> cumulative(K);
  std::vector<Count> doc_counts(K);
  std::vector<Count> z;
  const double k_alpha = static_cast<double>(K) * alpha;
  const auto kept = static_cast<double>(options.sweeps - options.burn_in);

  for (std::size_t d = 0; d < heldout.num_docs(); ++d) {
    const auto& tokens = heldout.doc(d).tokens;
    std::fill(doc_counts.begin(), doc_counts.end(), 0);
    z.resize(tokens.size());
    for (auto& topic : z) {
      topic = static_cast<Count>(rng.below(K));
      ++doc_counts[static_cast<std::size_t>(topic)];
    }
    double* out = theta.data() + d * K;
    for (std::size_t sweep = 1; sweep <= options.sweeps; ++sweep) {
      for (std::size_t n = 0; n < tokens.size(); ++n) {
        --doc_counts[static_cast<std::size_t>(z[n])];
        const TermId w = tokens[n];
        double total = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          total += model.phi[k * V + w] * (doc_counts[k] + alpha);
          cumulative[k] = total;
        }
        const double target = rng.uniform() * total;
        std::size_t topic = K - 1;
        for (std::size_t k = 0; k < K; ++k) {
          if (target < cumulative[k]) {
            topic = k;
            break;
          }
        }
        z[n] = static_cast<Count>(topic);
        ++doc_counts[topic];
      }
      if (sweep > options.burn_in) {
        const double denom = static_cast<double>(tokens.size()) + k_alpha;
        for (std::size_t k = 0; k < K; ++k) {
          out[k] += (doc_counts[k] + alpha) / denom / kept;
        }
      }
    }
  }
  return theta;
}

double perplexity(const TopicModel& model, const Corpus& heldout,
                  const FoldInOptions& options) {
  if (!(heldout.vocab() == model.vocab)) {
    throw Error(ErrorCode::kIncompatibleVocabulary,
                "held-out corpus was not encoded with the model vocabulary");
  }
  if (heldout.total_tokens() == 0) {
    throw Error(ErrorCode::kEmptySelection, "held-out corpus has no tokens");
  }
  const std::size_t K = model.num_topics();
  const std::vector<double> theta = fold_in(model, heldout, options);
  double log_sum = 0.0;
  for (std::size_t d = 0; d < heldout.num_docs(); ++d) {
    for (const TermId w : heldout.doc(d).tokens) {
      double p = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        p += theta[d * K + k] * model.phi_at(k, w);
      }
      log_sum += std::log(p);
    }
  }
  return std::exp(-log_sum / static_cast<double>(heldout.total_tokens()));
}

}  // namespace scholarlda
