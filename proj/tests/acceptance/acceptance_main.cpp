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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "scholarlda/io.hpp"
#include "scholarlda/lda.hpp"
#include "scholarlda/recommend.hpp"
#include "scholarlda/trends.hpp"

using namespace scholarlda;
using testing::DocSpec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) { return format_double(x); }

// AC1: integer count identities after init and after each of 50 sweeps.
Outcome count_invariants() {
  const auto start = Clock::now();
  const Corpus corpus = testing::random_corpus(200, 300, 20, 80, 101);
  Hyperparams hp;
  hp.num_topics = 10;
  hp.seed = 7;
  SamplerState state = init_state(corpus, hp);
  check_invariants(state);
  std::size_t changed = 0;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const auto before = state.z;
    gibbs_sweep(state, hp);
    check_invariants(state);
    if (state.z != before) ++changed;
  }
  const double secs = seconds_since(start);
  const bool ok = secs < 5.0 && changed == 50;
  return {ok, "51 checks, V=" + std::to_string(corpus.vocab_size()) + ", " +
                  std::to_string(corpus.total_tokens()) + " tokens, " +
                  fmt(secs) + " s (limit 5 s)"};
}

// AC2: every assignment of a 5-token, 3-term, K=2 corpus; every token.
Outcome gibbs_oracle() {
  const auto start = Clock::now();
  const std::vector<std::vector<TermId>> words = {{0, 1, 2}, {2, 1}};
  const Corpus corpus = testing::make_corpus(words, 3);
  Hyperparams hp;
  hp.num_topics = 2;
  hp.alpha = 0.37;
  hp.beta = 0.05;
  double worst = 0.0;
  std::size_t comparisons = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<std::vector<Count>> z = {
        {Count(mask & 1), Count(mask >> 1 & 1), Count(mask >> 2 & 1)},
        {Count(mask >> 3 & 1), Count(mask >> 4 & 1)}};
    for (std::size_t d = 0; d < words.size(); ++d) {
      for (std::size_t n = 0; n < words[d].size(); ++n) {
        SamplerState state = state_from_assignments(corpus, z, hp);
        remove_token(state, d, n);
        const auto got = conditional_weights(state, hp, d, n);
        const auto want = testing::oracle_conditional(words, z, 3, 2, hp.alpha,
                                                      hp.beta, d, n);
        for (std::size_t k = 0; k < 2; ++k) {
          worst = std::max(worst, std::abs(got[k] - want[k]));
          ++comparisons;
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-12 && secs < 1.0,
          std::to_string(comparisons) + " weights, max |diff| " + fmt(worst) +
              " (tol 1e-12), " + fmt(secs) + " s (limit 1 s)"};
}

struct SyntheticRun {
  std::uint64_t seed = 0;
  int attempts = 0;
  double cosine = 0.0;
  double seconds = 0.0;
  std::vector<double> trace;  // log-likelihood after every sweep
  TopicModel model;
  testing::SyntheticData data;
};

SyntheticRun synthetic_run(std::uint64_t seed) {
  SyntheticRun run{seed, 0, 0.0, 0.0, {}, {},
                   testing::disjoint_topics(5, 50, 500, 100, 100, 0.5, seed)};
  Hyperparams hp;
  hp.num_topics = 5;
  hp.alpha = 0.01;
  hp.beta = 0.01;
  hp.iterations = 500;
  hp.burn_in = 0;
  hp.seed = seed;
  TrainOptions options;
  options.log_interval = 1;
  options.on_progress = [&run](const ProgressRecord& p) {
    run.trace.push_back(p.log_likelihood);
  };
  const auto start = Clock::now();
  run.model = train(run.data.corpus, hp, options);
  run.seconds = seconds_since(start);
  run.cosine =
      testing::greedy_matched_cosine(run.model.phi, run.data.true_phi, 5, 50);
  return run;
}

// Shared by AC3, AC5 and AC6. One seed retry is allowed for AC3.
const SyntheticRun& synthetic() {
  static const SyntheticRun run = [] {
    SyntheticRun first = synthetic_run(2024);
    first.attempts = 1;
    if (first.cosine >= 0.9) return first;
    SyntheticRun second = synthetic_run(2025);
    second.attempts = 2;
    second.seconds += first.seconds;
    return second;
  }();
  return run;
}

Outcome topic_recovery() {
  const auto& run = synthetic();
  return {run.cosine >= 0.9 && run.seconds < 60.0,
          "mean matched cosine " + fmt(run.cosine) + " (min 0.9), seed " +
              std::to_string(run.seed) + ", attempts " +
              std::to_string(run.attempts) + ", " + fmt(run.seconds) +
              " s (limit 60 s)"};
}

Outcome likelihood_trend() {
  const auto& trace = synthetic().trace;
  if (trace.size() != 500) {
    return {false, "expected 500 trace points, got " + std::to_string(trace.size())};
  }
  const double early = testing::median({trace.begin(), trace.begin() + 50});
  const double late = testing::median({trace.end() - 50, trace.end()});
  return {late > early, "median LL sweeps 451-500 " + fmt(late) +
                            " vs sweeps 1-50 " + fmt(early)};
}

Outcome perplexity_sanity() {
  const auto& run = synthetic();
  const double trained = perplexity(run.model, run.data.heldout);
  const double uniform = perplexity(
      uniform_model(run.model.vocab, run.model.hyperparams, 0), run.data.heldout);
  const double V = static_cast<double>(run.model.vocab_size());
  const bool ok = trained < uniform && std::abs(uniform - V) <= 1e-9;
  return {ok, "held-out perplexity " + fmt(trained) + " vs uniform " +
                  fmt(uniform) + " (V=" + fmt(V) + ", tol 1e-9)"};
}

struct MiniWorkspace {
  testing::TempDir dir;
  std::string corpus = dir.file("mini_corpus.json").string();

  MiniWorkspace() {
    const auto r = testing::run_cli({"ingest", "--input",
                                     SCHOLARLDA_DATA_DIR "/mini_corpus.jsonl",
                                     "--out", corpus});
    if (r.code != 0) throw std::runtime_error("ingest failed: " + r.err);
  }
  std::string train(const std::string& name, std::vector<std::string> extra) {
    const std::string out = dir.file(name).string();
    std::vector<std::string> args = {"train", "--corpus", corpus, "--out", out};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = testing::run_cli(args);
    if (r.code != 0) throw std::runtime_error("train failed: " + r.err);
    return out;
  }
};

Outcome determinism() {
  MiniWorkspace ws;
  const std::vector<std::string> flags = {"--topics", "8", "--seed", "1234"};
  const std::string a = read_file(ws.train("a.json", flags));
  const std::string b = read_file(ws.train("b.json", flags));
  return {!a.empty() && a == b,
          "two train runs, " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()) + " bytes, " +
              (a == b ? "identical" : "different")};
}

// AC7: the three worked examples of the overlap score.
Outcome overlap_golden() {
  const std::set<std::size_t> target = {1, 2, 3};
  const double partial = overlap_score(
      target, EntityProfile::from_counts("f1", {{2, 4}, {3, 1}, {4, 5}}, 10));
  const double disjoint =
      overlap_score(target, EntityProfile::from_counts("f2", {{7, 3}}, 2));
  const double saturated = overlap_score(
      target, EntityProfile::from_counts("f3", {{1, 1}, {2, 1}, {3, 1}}, 1));

  // Also through the command line, from a hand-made model whose top-1
  // topics for author f1 are 2 (x4), 3 (x1), 4 (x5).
  testing::TempDir dir;
  std::vector<DocSpec> specs;
  const std::size_t K = 6;
  std::vector<double> theta;
  for (const std::size_t k : {2, 2, 2, 2, 3, 4, 4, 4, 4, 4}) {
    specs.push_back(DocSpec{{0, 1}, "V", 2016, {"f1"}});
    std::vector<double> row(K, 0.02);
    row[k] = 0.9;
    theta.insert(theta.end(), row.begin(), row.end());
  }
  const Corpus corpus = testing::make_meta_corpus(specs, 2);
  TopicModel model = uniform_model(corpus.vocab(), Hyperparams{}, corpus.num_docs());
  model.hyperparams.num_topics = K;
  model.phi.assign(K * 2, 0.5);
  model.theta = theta;
  model.corpus_fingerprint = corpus_fingerprint(corpus);
  const auto corpus_path = dir.file("c.json").string();
  const auto model_path = dir.file("m.json").string();
  write_file_atomic(corpus_path, serialize_corpus(corpus));
  write_file_atomic(model_path, serialize_model(model));
  const auto r = testing::run_cli({"recommend", "--model", model_path, "--corpus",
                                   corpus_path, "--target", "1,2,3",
                                   "--membership", "top:1"});
  const auto rows = testing::parse_simple_csv(r.out);
  const bool cli_ok = r.code == 0 && rows.size() == 2 && rows[1][0] == "f1" &&
                      std::stod(rows[1][1]) == 1.0;

  const bool ok = partial == 1.0 && disjoint == 0.0 && saturated == 9.0 && cli_ok;
  return {ok, "scores " + fmt(partial) + ", " + fmt(disjoint) + ", " +
                  fmt(saturated) + " (want 1, 0, 9); CLI " +
                  (cli_ok ? "1" : "mismatch: " + r.out + r.err)};
}

// AC8: row sums of real series, and antisymmetry on random series.
Outcome trend_properties() {
  std::mt19937_64 rng(88);
  std::vector<DocSpec> specs;
  std::uniform_int_distribution<int> year(2010, 2017), venue(0, 3);
  std::uniform_int_distribution<TermId> word(0, 39);
  std::uniform_int_distribution<std::size_t> length(1, 40);
  for (int d = 0; d < 300; ++d) {
    DocSpec s;
    s.tokens.resize(length(rng));
    for (auto& w : s.tokens) w = word(rng);
    s.venue = "venue" + std::to_string(venue(rng));
    if (d % 17 != 0) s.year = year(rng);
    specs.push_back(std::move(s));
  }
  const Corpus corpus = testing::make_meta_corpus(specs, 40);
  Hyperparams hp;
  hp.num_topics = 7;
  hp.iterations = 50;
  hp.burn_in = 10;
  hp.alpha = 0.1;
  const TopicModel model = train(corpus, hp);
  double worst_sum = 0.0;
  std::size_t rows = 0;
  for (const auto& v : venues(corpus)) {
    const TrendSeries s = topic_year_series(model, corpus, v);
    for (std::size_t i = 0; i < s.years.size(); ++i, ++rows) {
      double sum = 0.0;
      for (const double x : s.row(i)) sum += x;
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }

  std::size_t violations = 0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    TrendSeries s;
    s.venue = "r";
    s.num_topics = 1 + trial % 9;
    const int span = 2 + trial % 6;
    for (int y = 0; y < span; ++y) s.years.push_back(2000 + 2 * y);
    for (int y = 0; y < span; ++y) {
      std::vector<double> row(s.num_topics);
      double total = 0.0;
      for (auto& x : row) total += x = u(rng);
      if (trial % 5 == 0) row.assign(s.num_topics, total / s.num_topics);  // ties
      for (auto& x : row) s.values.push_back(x / total);
    }
    const std::size_t topic = rng() % s.num_topics;
    const int a = s.years[rng() % s.years.size()];
    const int b = s.years[rng() % s.years.size()];
    const double eps = trial % 3 == 0 ? 0.0 : kDefaultFlatBand * (1 + trial % 4);
    const auto fwd = trend_direction(s, topic, a, b, eps);
    const auto back = trend_direction(s, topic, b, a, eps);
    const bool mirrored =
        (fwd.direction == TrendDirection::kRising &&
         back.direction == TrendDirection::kFalling) ||
        (fwd.direction == TrendDirection::kFalling &&
         back.direction == TrendDirection::kRising) ||
        (fwd.direction == TrendDirection::kFlat &&
         back.direction == TrendDirection::kFlat);
    if (!mirrored || fwd.delta != -back.delta) ++violations;
  }
  const bool ok = worst_sum <= 1e-9 && violations == 0 && rows > 0;
  return {ok, std::to_string(rows) + " year-rows, max |sum-1| " + fmt(worst_sum) +
                  " (tol 1e-9); antisymmetry violations " +
                  std::to_string(violations) + "/1000"};
}

// AC9: nothing but the required paths on the command line.
Outcome default_parameters() {
  testing::TempDir dir;
  const auto records = dir.write(
      "r.jsonl",
      "{\"id\":\"a\",\"title\":\"Latent topics in scholarly abstracts\"}\n"
      "{\"id\":\"b\",\"title\":\"Venue trends across conference years\"}\n");
  const auto corpus = dir.file("c.json").string();
  const auto model = dir.file("m.json").string();
  const auto ingest = testing::run_cli({"ingest", "--input", records.string(), "--out", corpus});
  const auto train = testing::run_cli({"train", "--corpus", corpus, "--out", model});
  if (ingest.code != 0 || train.code != 0) {
    return {false, "CLI failed: " + ingest.err + train.err};
  }
  const auto j = nlohmann::json::parse(read_file(model));
  const auto& h = j.at("hyperparams");
  const bool ok = h.at("topics") == 100 && h.at("alpha") == 0.01 &&
                  h.at("beta") == 0.01;
  return {ok, "model file echoes topics=" + h.at("topics").dump() +
                  " alpha=" + h.at("alpha").dump() + " beta=" + h.at("beta").dump()};
}

// AC10: each planted theme's five seed words land in one topic's top 20.
Outcome mini_corpus_themes() {
  MiniWorkspace ws;
  const std::string model = ws.train("mini_model.json", {"--topics", "8",
                                                         "--iterations", "300"});
  const auto r = testing::run_cli({"topics", "--model", model});
  if (r.code != 0) return {false, "topics failed: " + r.err};
  std::map<std::string, std::set<std::string>> top;
  const auto rows = testing::parse_simple_csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) top[rows[i][0]].insert(rows[i][2]);
  for (const auto& [topic, words] : top) {
    if (words.size() != 20) return {false, "topic " + topic + " lists fewer than 20 words"};
  }

  std::ifstream themes(SCHOLARLDA_DATA_DIR "/mini_corpus_themes.csv");
  std::string line;
  std::getline(themes, line);  // header
  std::size_t total = 0, separated = 0;
  std::set<std::string> claimed;
  std::string detail;
  while (std::getline(themes, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const std::string name = line.substr(0, first);
    std::istringstream seeds(line.substr(second + 1));
    std::vector<std::string> words{std::istream_iterator<std::string>(seeds), {}};
    ++total;
    std::string home;
    for (const auto& [topic, listed] : top) {
      const bool all = std::all_of(words.begin(), words.end(),
                                   [&](const auto& w) { return listed.count(w); });
      if (all && !claimed.count(topic)) {
        home = topic;
        break;
      }
    }
    if (!home.empty()) {
      ++separated;
      claimed.insert(home);
    }
    detail += (detail.empty() ? "" : ", ") + name + "->" + (home.empty() ? "none" : home);
  }
  return {total == 6 && separated == total,
          std::to_string(separated) + "/" + std::to_string(total) +
              " themes in distinct topics (" + detail + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 count invariants", count_invariants},
      {"AC2 gibbs oracle equivalence", gibbs_oracle},
      {"AC3 synthetic topic recovery", topic_recovery},
      {"AC4 determinism", determinism},
      {"AC5 likelihood trend", likelihood_trend},
      {"AC6 perplexity sanity", perplexity_sanity},
      {"AC7 overlap score golden values", overlap_golden},
      {"AC8 trend normalization and direction", trend_properties},
      {"AC9 default parameters", default_parameters},
      {"AC10 mini-corpus theme separation", mini_corpus_themes},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": "
              << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
