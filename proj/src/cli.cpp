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

#include "scholarlda/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scholarlda/corpus.hpp"
#include "scholarlda/io.hpp"
#include "scholarlda/lda.hpp"
#include "scholarlda/recommend.hpp"
#include "scholarlda/topics.hpp"
#include "scholarlda/trends.hpp"

namespace scholarlda::cli {
namespace {

enum class OutputFormat { kCsv, kText };

struct RunConfig {
  std::string subcommand;

  // Shared flags.
  Hyperparams hp;
  std::string stoplist_path;
  std::string venue;
  std::string years;
  OutputFormat format = OutputFormat::kCsv;
  std::string out_path;

  // ingest
  std::string input_path;
  std::string input_format;
  std::size_t min_count = 1;

  // train
  std::string corpus_path;
  std::size_t log_interval = 10;
  std::size_t chains = 1;

  // topics / trends / recommend / eval
  std::string model_path;
  std::size_t words = kDefaultTopWords;
  std::size_t fields = 10;
  std::string labels_path;
  std::optional<int> from_year;
  std::optional<int> to_year;
  double epsilon = kDefaultFlatBand;
  std::string target;
  std::string query_doc;
  std::string entity_kind = "author";
  std::string membership = "top:3";
  std::size_t top = 0;
  std::string heldout_path;
  std::size_t fold_in_sweeps = 100;
  std::size_t fold_in_burn_in = 20;
};

Error usage(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kInvariantViolation: return kExitInternal;
    default: return kExitData;
  }
}

void write_error_record(std::ostream& err, std::string_view code,
                        const std::string& message, int exit_code) {
  nlohmann::json record = {
      {"error", {{"code", code}, {"message", message}, {"exit_code", exit_code}}}};
  err << record.dump() << '\n';
}

// Accepts "A..B", "A..", "..B" or a single year.
std::pair<std::optional<int>, std::optional<int>> parse_years(
    std::string_view text) {
  auto parse_one = [&](std::string_view s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    int year = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw usage("--years expects A..B, got '" + std::string(text) + "'");
    }
    return year;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto year = parse_one(text);
    return {year, year};
  }
  return {parse_one(text.substr(0, dots)), parse_one(text.substr(dots + 2))};
}

DocFilter make_filter(const RunConfig& config) {
  DocFilter filter;
  if (!config.venue.empty()) filter.venue = config.venue;
  if (!config.years.empty()) {
    std::tie(filter.year_from, filter.year_to) = parse_years(config.years);
  }
  return filter;
}

const Stoplist& resolve_stoplist(const RunConfig& config, Stoplist& storage) {
  if (config.stoplist_path.empty()) return Stoplist::english();
  storage = Stoplist::load(config.stoplist_path);
  return storage;
}

RecordFormat resolve_format(const RunConfig& config,
                            const std::filesystem::path& path) {
  if (config.input_format == "jsonl") return RecordFormat::kJsonl;
  if (config.input_format == "csv") return RecordFormat::kCsv;
  if (const auto format = format_from_extension(path)) return *format;
  throw usage("cannot infer record format of " + path.string() +
              "; pass --input-format jsonl|csv");
}

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw usage(std::string(flag) + " is required");
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kFileNotFound, "no such file: " + path);
  }
}

// Rows of string cells rendered as csv or as aligned text columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(OutputFormat format) const {
    std::ostringstream out;
    if (format == OutputFormat::kCsv) {
      write_csv_row(out, header_);
      for (const auto& row : rows_) write_csv_row(out, row);
      return out.str();
    }
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    }
    auto line = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c + 1 == row.size()) {
          out << row[c];
        } else {
          out << std::left << std::setw(static_cast<int>(width[c] + 2)) << row[c];
        }
      }
      out << '\n';
    };
    line(header_);
    for (const auto& row : rows_) line(row);
    return out.str();
  }

 private:
  static void write_csv_row(std::ostream& out,
                            const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      const auto& cell = row[c];
      if (cell.find_first_of(",\"\n\r") == std::string::npos) {
        out << cell;
        continue;
      }
      out << '"';
      for (const char ch : cell) {
        if (ch == '"') out << '"';
        out << ch;
      }
      out << '"';
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void emit(const RunConfig& config, const std::string& content,
          std::ostream& out) {
  if (config.out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(config.out_path, content);
  }
}

std::pair<TopicModel, Corpus> load_model_and_corpus(const RunConfig& config) {
  require_file(config.model_path, "--model");
  require_file(config.corpus_path, "--corpus");
  TopicModel model = load_model(config.model_path);
  Corpus corpus = load_corpus(config.corpus_path);
  require_same_corpus(model, corpus);
  return {std::move(model), std::move(corpus)};
}

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.out_path.empty()) throw usage("--out is required for ingest");
  require_file(config.input_path, "--input");
  const std::filesystem::path input(config.input_path);
  Stoplist custom;
  const Stoplist& stoplist = resolve_stoplist(config, custom);
  const auto records = load_records(input, resolve_format(config, input));
  const BuildResult built = build_corpus(records, stoplist, config.min_count);
  write_file_atomic(config.out_path, serialize_corpus(built.corpus));

  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& d : built.dropped) {
    dropped.push_back({{"id", d.id}, {"reason", d.reason}});
  }
  nlohmann::json report = nlohmann::json::object();
  report["records"] = records.size();
  report["num_docs"] = built.corpus.num_docs();
  report["vocab_size"] = built.corpus.vocab_size();
  report["total_tokens"] = built.corpus.total_tokens();
  report["fingerprint"] = corpus_fingerprint(built.corpus);
  report["dropped"] = std::move(dropped);
  out << report.dump() << '\n';
  return kExitOk;
}

int cmd_train(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.out_path.empty()) throw usage("--out is required for train");
  require_file(config.corpus_path, "--corpus");
  config.hp.validate();
  const Corpus corpus = load_corpus(config.corpus_path);

  TrainOptions options;
  options.log_interval = config.log_interval;
  options.on_progress = [&err](const ProgressRecord& p) {
    err << "iteration " << p.iteration << " log_likelihood "
        << format_double(p.log_likelihood)
        << (p.after_burn_in ? "" : " (burn-in)") << '\n';
  };
  ChainResult result = train_chains(corpus, config.hp, config.chains, options);
  write_file_atomic(config.out_path, serialize_model(result.model));

  nlohmann::json summary = nlohmann::json::object();
  summary["model"] = config.out_path;
  summary["chain"] = result.chain;
  summary["seed"] = result.model.hyperparams.seed;
  summary["log_likelihood"] = result.model.log_likelihood;
  summary["corpus_fingerprint"] = result.model.corpus_fingerprint;
  out << summary.dump() << '\n';
  return kExitOk;
}

void add_summary_rows(Table& table, const TopicSummary& summary,
                      bool with_label) {
  for (std::size_t r = 0; r < summary.top_words.size(); ++r) {
    std::vector<std::string> row = {std::to_string(summary.topic_id),
                                    std::to_string(r + 1),
                                    summary.top_words[r].first,
                                    format_double(summary.top_words[r].second)};
    if (with_label) row.push_back(summary.label.value_or(""));
    table.add(std::move(row));
  }
}

int cmd_topics(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_file(config.model_path, "--model");
  const TopicModel model = load_model(config.model_path);
  const std::size_t words = std::min(config.words, model.vocab_size());
  if (config.words < 1) throw usage("--words must be >= 1");

  std::map<std::size_t, std::string> labels;
  if (!config.labels_path.empty()) {
    std::ifstream in(config.labels_path);
    if (!in) {
      throw Error(ErrorCode::kFileNotFound,
                  "cannot open labels file: " + config.labels_path);
    }
    labels = parse_topic_labels(in);
  }
  const bool with_label =
      config.format == OutputFormat::kText && !labels.empty();

  std::vector<TopicSummary> summaries;
  const DocFilter filter = make_filter(config);
  const bool scoped = filter.venue || filter.year_from || filter.year_to ||
                      !config.corpus_path.empty();
  if (scoped) {
    require_file(config.corpus_path, "--corpus");
    const Corpus corpus = load_corpus(config.corpus_path);
    require_same_corpus(model, corpus);
    summaries = recommend_fields(model, corpus, filter, config.fields, words);
  } else {
    for (std::size_t k = 0; k < model.num_topics(); ++k) {
      summaries.push_back(top_words(model, k, words));
    }
  }

  std::vector<std::string> header = {"topic_id", "rank", "term", "probability"};
  if (with_label) header.push_back("label");
  Table table(std::move(header));
  for (auto& summary : summaries) {
    if (const auto it = labels.find(summary.topic_id); it != labels.end()) {
      summary.label = it->second;
    }
    add_summary_rows(table, summary, with_label);
  }
  emit(config, table.render(config.format), out);
  return kExitOk;
}

int cmd_trends(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto [model, corpus] = load_model_and_corpus(config);
  std::vector<std::string> venue_list;
  if (config.venue.empty()) {
    for (auto& v : venues(corpus)) {
      const bool dated = std::any_of(
          corpus.docs().begin(), corpus.docs().end(),
          [&](const EncodedDoc& d) { return d.venue == v && d.year; });
      if (dated) venue_list.push_back(std::move(v));
    }
  } else {
    venue_list.push_back(config.venue);
  }
  std::optional<int> year_from, year_to;
  if (!config.years.empty()) {
    std::tie(year_from, year_to) = parse_years(config.years);
  }
  auto year_wanted = [&](int y) {
    return (!year_from || y >= *year_from) && (!year_to || y <= *year_to);
  };

  if (config.from_year.has_value() != config.to_year.has_value()) {
    throw usage("--from and --to must be given together");
  }
  if (config.from_year) {
    Table table({"venue", "topic_id", "from_year", "to_year", "delta",
                 "direction"});
    for (const auto& venue : venue_list) {
      const TrendSeries series = topic_year_series(model, corpus, venue);
      for (std::size_t k = 0; k < series.num_topics; ++k) {
        const TrendVerdict v = trend_direction(series, k, *config.from_year,
                                               *config.to_year, config.epsilon);
        table.add({venue, std::to_string(k), std::to_string(v.from_year),
                   std::to_string(v.to_year), format_double(v.delta),
                   std::string(direction_name(v.direction))});
      }
    }
    emit(config, table.render(config.format), out);
    return kExitOk;
  }

  Table table({"venue", "year", "topic_id", "probability"});
  for (const auto& venue : venue_list) {
    const TrendSeries series = topic_year_series(model, corpus, venue);
    for (std::size_t i = 0; i < series.years.size(); ++i) {
      if (!year_wanted(series.years[i])) continue;
      const auto row = series.row(i);
      for (std::size_t k = 0; k < series.num_topics; ++k) {
        table.add({venue, std::to_string(series.years[i]), std::to_string(k),
                   format_double(row[k])});
      }
    }
  }
  emit(config, table.render(config.format), out);
  return kExitOk;
}

std::set<std::size_t> parse_target(std::string_view text, std::size_t K) {
  std::set<std::size_t> target;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto piece = text.substr(start, end - start);
    std::size_t id = 0;
    const auto [ptr, ec] =
        std::from_chars(piece.data(), piece.data() + piece.size(), id);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw usage("--target expects comma-separated topic ids, got '" +
                  std::string(text) + "'");
    }
    if (id >= K) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "target topic " + std::to_string(id) + " >= K");
    }
    target.insert(id);
    start = end + 1;
  }
  return target;
}

int cmd_recommend(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.target.empty() == config.query_doc.empty()) {
    throw usage("exactly one of --target or --query-doc is required");
  }
  EntityKind kind;
  if (config.entity_kind == "author") {
    kind = EntityKind::kAuthor;
  } else if (config.entity_kind == "venue") {
    kind = EntityKind::kVenue;
  } else {
    throw usage("--entity-kind must be author or venue");
  }
  const MembershipRule rule = MembershipRule::parse(config.membership);
  const auto [model, corpus] = load_model_and_corpus(config);

  std::set<std::size_t> target;
  if (!config.target.empty()) {
    target = parse_target(config.target, model.num_topics());
  } else {
    const auto docs = corpus.docs();
    const auto it = std::find_if(docs.begin(), docs.end(), [&](const auto& d) {
      return d.id == config.query_doc;
    });
    if (it == docs.end()) {
      throw Error(ErrorCode::kUnknownEntity,
                  "no document with id '" + config.query_doc + "'");
    }
    for (const auto k : member_topics(model.theta_row(it->doc_index), rule)) {
      target.insert(k);
    }
    if (target.empty()) {
      throw Error(ErrorCode::kEmptySelection,
                  "query document has no member topics under the rule");
    }
  }

  std::vector<EntityProfile> profiles;
  for (const auto& id : entities(corpus, kind)) {
    profiles.push_back(entity_profile(model, corpus, id, kind, rule));
  }
  const RankedRecommendation ranked = rank_entities(target, profiles);
  const std::size_t limit =
      config.top == 0 ? ranked.size() : std::min(config.top, ranked.size());
  Table table({"entity_id", "score", "rank"});
  for (std::size_t i = 0; i < limit; ++i) {
    table.add({ranked[i].entity_id, format_double(ranked[i].score),
               std::to_string(i + 1)});
  }
  emit(config, table.render(config.format), out);
  return kExitOk;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_file(config.model_path, "--model");
  require_file(config.heldout_path, "--heldout");
  const TopicModel model = load_model(config.model_path);
  Stoplist custom;
  const Stoplist& stoplist = resolve_stoplist(config, custom);
  const std::filesystem::path heldout_path(config.heldout_path);
  const auto records = load_records(heldout_path,
                                    resolve_format(config, heldout_path));
  const BuildResult heldout =
      encode_with_vocabulary(records, stoplist, model.vocab);

  FoldInOptions options;
  options.sweeps = config.fold_in_sweeps;
  options.burn_in = config.fold_in_burn_in;
  options.seed = config.hp.seed;
  const double trained = perplexity(model, heldout.corpus, options);
  const double uniform = perplexity(
      uniform_model(model.vocab, model.hyperparams, 0), heldout.corpus, options);

  Table table({"heldout_docs", "heldout_tokens", "perplexity",
               "uniform_perplexity"});
  table.add({std::to_string(heldout.corpus.num_docs()),
             std::to_string(heldout.corpus.total_tokens()),
             format_double(trained), format_double(uniform)});
  emit(config, table.render(config.format), out);
  return kExitOk;
}

void add_shared_flags(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--seed", config.hp.seed, "Random seed")->capture_default_str();
  cmd.add_option("--topics", config.hp.num_topics, "Number of topics K")
      ->capture_default_str();
  cmd.add_option("--alpha", config.hp.alpha, "Document-topic prior")
      ->capture_default_str();
  cmd.add_option("--beta", config.hp.beta, "Topic-word prior")
      ->capture_default_str();
  cmd.add_option("--iterations", config.hp.iterations, "Gibbs sweeps")
      ->capture_default_str();
  cmd.add_option("--burn-in", config.hp.burn_in, "Sweeps before estimation")
      ->capture_default_str();
  cmd.add_option("--stoplist", config.stoplist_path,
                 "Stoplist file (default: bundled English list)");
  cmd.add_option("--venue", config.venue, "Restrict to one venue");
  cmd.add_option("--years", config.years, "Year range A..B");
  cmd.add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::kCsv},
                                              {"text", OutputFormat::kText}}));
  cmd.add_option("--out", config.out_path, "Output file (default: stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  CLI::App app{"Topic mining and recommendation for scholarly corpora",
               "scholarlda"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Build an encoded corpus file");
  auto* train = app.add_subcommand("train", "Train an LDA model by Gibbs sampling");
  auto* topics = app.add_subcommand("topics", "Top words per topic");
  auto* trends = app.add_subcommand("trends", "Per-venue yearly topic shares");
  auto* recommend = app.add_subcommand("recommend", "Rank entities by topic overlap");
  auto* eval = app.add_subcommand("eval", "Held-out perplexity");
  for (auto* cmd : {ingest, train, topics, trends, recommend, eval}) {
    add_shared_flags(*cmd, config);
  }

  ingest->add_option("--input", config.input_path, "Records file (jsonl or csv)");
  ingest->add_option("--input-format", config.input_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  ingest->add_option("--min-count", config.min_count,
                     "Drop terms rarer than this")
      ->capture_default_str();

  train->add_option("--corpus", config.corpus_path, "Corpus file");
  train->add_option("--log-interval", config.log_interval,
                    "Log-likelihood report interval (0 disables)")
      ->capture_default_str();
  train->add_option("--chains", config.chains, "Independent chains")
      ->capture_default_str();

  topics->add_option("--model", config.model_path, "Model file");
  topics->add_option("--corpus", config.corpus_path,
                     "Corpus file; ranks topics by prevalence in scope");
  topics->add_option("--words,-n", config.words, "Words per topic")
      ->capture_default_str();
  topics->add_option("--fields", config.fields,
                     "Topics listed when ranking by prevalence")
      ->capture_default_str();
  topics->add_option("--labels", config.labels_path,
                     "csv of topic_id,label shown in text output");

  trends->add_option("--model", config.model_path, "Model file");
  trends->add_option("--corpus", config.corpus_path, "Corpus file");
  trends->add_option("--from", config.from_year, "Compare from this year");
  trends->add_option("--to", config.to_year, "Compare to this year");
  trends->add_option("--epsilon", config.epsilon, "Flat band for verdicts")
      ->capture_default_str();

  recommend->add_option("--model", config.model_path, "Model file");
  recommend->add_option("--corpus", config.corpus_path, "Corpus file");
  recommend->add_option("--target", config.target, "Topic ids, e.g. 1,2,3");
  recommend->add_option("--query-doc", config.query_doc,
                        "Derive target topics from this document id");
  recommend->add_option("--entity-kind", config.entity_kind, "author or venue")
      ->capture_default_str();
  recommend->add_option("--membership", config.membership,
                        "top:M or threshold:T")
      ->capture_default_str();
  recommend->add_option("--top", config.top, "Rows to print (0 = all)")
      ->capture_default_str();

  eval->add_option("--model", config.model_path, "Model file");
  eval->add_option("--heldout", config.heldout_path, "Held-out records file");
  eval->add_option("--input-format", config.input_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  eval->add_option("--fold-in-sweeps", config.fold_in_sweeps,
                   "Sweeps per held-out document")
      ->capture_default_str();
  eval->add_option("--fold-in-burn-in", config.fold_in_burn_in,
                   "Fold-in sweeps discarded before averaging")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error_record(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  using Handler = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  const std::pair<CLI::App*, Handler> handlers[] = {
      {ingest, cmd_ingest}, {train, cmd_train},         {topics, cmd_topics},
      {trends, cmd_trends}, {recommend, cmd_recommend}, {eval, cmd_eval},
  };
  try {
    for (const auto& [cmd, handler] : handlers) {
      if (cmd->parsed()) {
        config.subcommand = cmd->get_name();
        return handler(config, out, err);
      }
    }
    throw usage("no subcommand given");
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    write_error_record(err, error_code_name(e.code()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    write_error_record(err, "internal", e.what(), kExitInternal);
    return kExitInternal;
  }
}

}  // namespace scholarlda::cli
