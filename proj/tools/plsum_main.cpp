#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plsum/abstractive.hpp"
#include "plsum/config.hpp"
#include "plsum/corpus_io.hpp"
#include "plsum/dataset.hpp"
#include "plsum/diag.hpp"
#include "plsum/error.hpp"
#include "plsum/eval.hpp"
#include "plsum/extractive.hpp"
#include "plsum/rouge.hpp"

using namespace plsum;

namespace {

// A prediction or reference file: JSONL objects {"title", "text"} when the
// first line parses as one, otherwise plain text with one entry per line,
// titled by line number.
struct TitledText {
  std::string title;
  std::string text;
};

std::vector<TitledText> read_titled_lines(const std::string& path, MalformedLinePolicy policy) {
  std::ifstream in = open_input(path);
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) lines.push_back(raw);

  bool jsonl = false;
  for (const auto& line : lines) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto probe = nlohmann::json::parse(line, nullptr, false);
    jsonl = probe.is_object() && probe.contains("title") && probe.contains("text");
    break;
  }

  std::vector<TitledText> out;
  out.reserve(lines.size());
  if (!jsonl) {
    for (size_t i = 0; i < lines.size(); ++i) {
      out.push_back({std::to_string(i + 1), lines[i]});
    }
    return out;
  }
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto obj = nlohmann::json::parse(lines[i], nullptr, false);
    std::string bad;
    if (obj.is_discarded() || !obj.is_object()) bad = "not a JSON object";
    else if (!obj.contains("title") || !obj["title"].is_string()) bad = "missing key title";
    else if (!obj.contains("text") || !obj["text"].is_string()) bad = "missing key text";
    if (!bad.empty()) {
      const std::string msg = path + " line " + std::to_string(i + 1) + ": " + bad;
      if (policy == MalformedLinePolicy::Abort) throw DataError(msg);
      log_warn(msg + " (skipped)");
      continue;
    }
    out.push_back({obj["title"].get<std::string>(), obj["text"].get<std::string>()});
  }
  return out;
}

std::string prf_to_json(const PrfScore& score) {
  nlohmann::ordered_json obj{{"p", score.precision}, {"r", score.recall}, {"f", score.f1}};
  return obj.dump();
}

// Writes `json_doc` to `out_path` when given (text rendering to stdout),
// otherwise the JSON goes to stdout and the text to stderr.
void emit_report(const std::string& json_doc, const std::string& text,
                 const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream out = open_output(out_path);
    out << json_doc << "\n";
    std::cout << text;
  } else {
    std::cout << json_doc << "\n";
    std::cerr << text;
  }
}

struct CliState {
  std::string config_path;
  int jobs = 0;
  bool lenient = false;

  CLI::App* sub = nullptr;
  PipelineConfig cfg;

  MalformedLinePolicy policy() const {
    return lenient ? MalformedLinePolicy::Skip : MalformedLinePolicy::Abort;
  }
  // flag beats config file beats default; flags the subcommand doesn't
  // define are simply absent
  template <typename T>
  void take(const char* flag, T& dst, const T& parsed) const {
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) dst = parsed;
  }
};

int cmd_build_dataset(CliState& state, const std::string& corpus_path,
                      const std::string& wiki_path, const std::string& out_path) {
  std::ifstream corpus = open_input(corpus_path);
  std::ifstream wiki = open_input(wiki_path);
  std::ofstream out = open_output(out_path);
  const BuildReport report =
      build_dataset(corpus, wiki, out, state.cfg.filters, state.policy(), state.cfg.jobs);
  log_info("wiki pages: " + std::to_string(report.wiki_pages));
  log_info("corpus records: " + std::to_string(report.corpus_records));
  log_info("accepted: " + std::to_string(report.accepted));
  log_info("rejected (too few input words): " +
           std::to_string(report.rejected_too_few_input_words));
  log_info("rejected (summary too short): " + std::to_string(report.rejected_summary_too_short));
  log_info("rejected (no matching docs): " + std::to_string(report.rejected_no_matching_docs));
  log_info("clone documents removed: " + std::to_string(report.clone_docs_removed));
  if (report.empty_titles_skipped > 0) {
    log_info("titles without word tokens skipped: " +
             std::to_string(report.empty_titles_skipped));
  }
  return 0;
}

int cmd_stats(CliState& state, const std::string& dataset_path, const std::string& out_path) {
  std::ifstream in = open_input(dataset_path);
  const auto examples = read_all_examples(in, state.policy());
  const DatasetStats stats = compute_stats(examples);
  emit_report(stats_to_json(stats), stats_to_text(stats), out_path);
  return 0;
}

int cmd_extract(CliState& state, const std::string& dataset_path, const std::string& name,
                const std::string& out_path) {
  std::ifstream in = open_input(dataset_path);
  ExtractOptions options;
  options.extractor = parse_extractor(name);
  options.L = state.cfg.L;
  options.seed = state.cfg.seed;
  options.target_words = state.cfg.target_words;
  options.jobs = state.cfg.jobs;
  options.policy = state.policy();

  size_t written = 0;
  if (!out_path.empty()) {
    std::ofstream out = open_output(out_path);
    written = extract_stream(in, out, options);
  } else {
    written = extract_stream(in, std::cout, options);
  }
  log_info("extracted " + std::to_string(written) + " examples");
  return 0;
}

int cmd_rouge(CliState& state, const std::string& predictions_path,
              const std::string& targets_path, const std::string& out_path) {
  const auto predictions = read_titled_lines(predictions_path, state.policy());
  const auto targets = read_titled_lines(targets_path, state.policy());
  if (predictions.size() != targets.size()) {
    throw DataError("predictions and targets differ in length: " +
                    std::to_string(predictions.size()) + " vs " +
                    std::to_string(targets.size()));
  }
  if (predictions.empty()) throw DataError("no prediction/target pairs");

  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(predictions.size());
  for (size_t i = 0; i < predictions.size(); ++i) {
    pairs.emplace_back(predictions[i].text, targets[i].text);
  }
  const CorpusScore score = score_corpus(pairs, state.cfg.jobs);

  std::ofstream file;
  if (!out_path.empty()) file = open_output(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;
  for (size_t i = 0; i < score.per_example.size(); ++i) {
    const auto& r = score.per_example[i];
    out << "{\"title\": " << nlohmann::json(targets[i].title).dump()
        << ", \"r1\": " << prf_to_json(r.r1) << ", \"r2\": " << prf_to_json(r.r2)
        << ", \"rl\": " << prf_to_json(r.rl) << "}\n";
  }
  std::cerr << "mean over " << score.per_example.size() << " pairs\n"
            << "  r1 " << prf_to_json(score.mean.r1) << "\n"
            << "  r2 " << prf_to_json(score.mean.r2) << "\n"
            << "  rl " << prf_to_json(score.mean.rl) << "\n";
  return 0;
}

int cmd_experiment(CliState& state, const std::string& dataset_path, const std::string& out_path) {
  std::ifstream in = open_input(dataset_path);
  const auto examples = read_all_examples(in, state.policy());
  EvalParams params;
  params.n_resamples = state.cfg.n_resamples;
  params.lo_pct = state.cfg.lo_pct;
  params.hi_pct = state.cfg.hi_pct;
  const Experiment1Result result = run_experiment1(examples, state.cfg.L, state.cfg.seed, params,
                                                   state.cfg.target_words, state.cfg.jobs);
  emit_report(experiment_to_json(result), experiment_to_text(result), out_path);
  return 0;
}

int cmd_sweep_l(CliState& state, const std::string& dataset_path, const std::string& name,
                std::vector<int> l_values, const std::string& out_path) {
  std::ifstream in = open_input(dataset_path);
  const auto examples = read_all_examples(in, state.policy());
  if (l_values.empty()) {
    for (int L = 0; L <= 18; L += 2) l_values.push_back(L);
  }
  std::sort(l_values.begin(), l_values.end());
  l_values.erase(std::unique(l_values.begin(), l_values.end()), l_values.end());
  const auto points = l_sweep(examples, parse_extractor(name), l_values, state.cfg.seed,
                              state.cfg.target_words, state.cfg.jobs);
  emit_report(sweep_to_json(points), sweep_to_text(points), out_path);
  return 0;
}

int cmd_abstractive_run(CliState& state, const std::string& extracts_path,
                        const std::string& out_path) {
  if (state.cfg.abstractive.command.empty()) {
    throw DataError("no model command configured (use --command or the config file)");
  }
  std::ifstream in = open_input(extracts_path);
  std::vector<std::string> titles, inputs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto obj = nlohmann::json::parse(line, nullptr, false);
    std::string bad;
    if (obj.is_discarded() || !obj.is_object()) bad = "not a JSON object";
    else if (!obj.contains("title") || !obj["title"].is_string()) bad = "missing key title";
    else if (!obj.contains("assembled") || !obj["assembled"].is_string())
      bad = "missing key assembled";
    if (!bad.empty()) {
      const std::string msg = extracts_path + " line " + std::to_string(line_no) + ": " + bad;
      if (state.policy() == MalformedLinePolicy::Abort) throw DataError(msg);
      log_warn(msg + " (skipped)");
      continue;
    }
    titles.push_back(obj["title"].get<std::string>());
    inputs.push_back(truncate_input(obj["assembled"].get<std::string>(),
                                    state.cfg.abstractive.max_input_tokens));
  }
  if (inputs.empty()) throw DataError("no extracts in " + extracts_path);

  const AbstractiveBatch batch = invoke_external(state.cfg.abstractive, inputs);
  std::ofstream file;
  if (!out_path.empty()) file = open_output(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;
  for (size_t i = 0; i < batch.items.size(); ++i) {
    const auto& item = batch.items[i];
    out << "{\"title\": " << nlohmann::json(titles[i]).dump()
        << ", \"summary\": " << nlohmann::json(item.summary).dump()
        << ", \"tokens\": " << item.token_count
        << ", \"length_ok\": " << (item.length_ok ? "true" : "false") << "}\n";
  }
  if (batch.violations > 0) {
    log_warn(std::to_string(batch.violations) + " summaries violate the length bounds");
  }
  log_info("summarized " + std::to_string(batch.items.size()) + " extracts");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-document summarization pipeline: dataset construction, extractive stages, "
               "ROUGE evaluation, and an adapter to external abstractive models"};
  app.require_subcommand(1);
  app.fallthrough();

  CliState state;
  app.add_option("--config", state.config_path, "JSON config file with pipeline defaults")
      ->envname("PLSUM_CONFIG");
  app.add_option("--jobs", state.jobs, "worker threads (0 = all hardware threads)")
      ->envname("PLSUM_JOBS");
  app.add_flag("--lenient", state.lenient,
               "skip malformed input lines with a warning instead of aborting");

  // per-subcommand option storage; only values the user actually passed
  // override the config file
  std::string corpus_path, wiki_path, dataset_path, predictions_path, targets_path, extracts_path,
      out_path, extractor_name = "tfidf", command;
  int max_docs = 15, min_input_words = 1000, min_summary_words = 20;
  double clone_threshold = 0.5;
  int L = 5, n_resamples = 1000, target_words = 100, j_budget = 768, k_max = 256, k_min = 20;
  double lo_pct = 2.5, hi_pct = 97.5;
  uint64_t seed = 0;
  std::vector<int> l_values;

  CLI::App* build = app.add_subcommand("build-dataset",
                                       "match corpus documents to wiki titles, filter, and write "
                                       "the dataset");
  build->add_option("--corpus", corpus_path, "corpus JSONL: {docid, url, title, text}")
      ->required();
  build->add_option("--wiki", wiki_path, "wiki JSONL: {title, summary}")->required();
  build->add_option("--out", out_path, "output dataset JSONL")->required();
  build->add_option("--max-docs", max_docs, "documents kept per example");
  build->add_option("--min-input-words", min_input_words, "minimum total words over all docs");
  build->add_option("--min-summary-words", min_summary_words, "minimum summary words");
  build->add_option("--clone-threshold", clone_threshold,
                    "remove docs whose unigram containment of the summary exceeds this");

  CLI::App* stats = app.add_subcommand("stats", "percentile size statistics of a dataset");
  stats->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  stats->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI::App* extract = app.add_subcommand("extract", "run an extractive stage over a dataset");
  extract->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  extract->add_option("--extractor", extractor_name, "tfidf, random, or cheating")
      ->check(CLI::IsMember({"tfidf", "random", "cheating"}));
  extract->add_option("-L,--sentences", L, "sentences selected per example");
  extract->add_option("--seed", seed, "base seed; example i draws from seed + i")
      ->envname("PLSUM_SEED");
  extract->add_option("--target-words", target_words, "words per sentence unit");
  extract->add_option("--out", out_path, "output JSONL (stdout when omitted)");

  CLI::App* rouge = app.add_subcommand("rouge", "score prediction/target pairs");
  rouge->add_option("--predictions", predictions_path,
                    "predictions: plain lines or JSONL {title, text}")
      ->required();
  rouge->add_option("--targets", targets_path, "targets: plain lines or JSONL {title, text}")
      ->required();
  rouge->add_option("--out", out_path, "per-pair output JSONL (stdout when omitted)");

  CLI::App* experiment = app.add_subcommand("experiment",
                                            "compare all three extractors with bootstrap CIs");
  experiment->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  experiment->add_option("-L,--sentences", L, "sentences selected per example");
  experiment->add_option("--seed", seed, "base seed")->envname("PLSUM_SEED");
  experiment->add_option("--n-resamples", n_resamples, "bootstrap resamples");
  experiment->add_option("--lo-pct", lo_pct, "lower CI percentile");
  experiment->add_option("--hi-pct", hi_pct, "upper CI percentile");
  experiment->add_option("--target-words", target_words, "words per sentence unit");
  experiment->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI::App* sweep = app.add_subcommand("sweep-l", "bigram recall of an extractor across L");
  sweep->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  sweep->add_option("--extractor", extractor_name, "tfidf, random, or cheating")
      ->check(CLI::IsMember({"tfidf", "random", "cheating"}));
  sweep->add_option("--l-values", l_values, "L values (default 0,2,...,18)")->delimiter(',');
  sweep->add_option("--seed", seed, "base seed")->envname("PLSUM_SEED");
  sweep->add_option("--target-words", target_words, "words per sentence unit");
  sweep->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI::App* abs_run = app.add_subcommand("abstractive-run",
                                         "truncate extracts and pipe them through an external "
                                         "model command");
  abs_run->add_option("--extracts", extracts_path, "extract JSONL from the extract subcommand")
      ->required();
  abs_run->add_option("--command", command, "model command, run via /bin/sh -c");
  abs_run->add_option("-J,--max-input-tokens", j_budget, "input token budget");
  abs_run->add_option("--k-max", k_max, "maximum summary tokens");
  abs_run->add_option("--k-min", k_min, "minimum summary tokens");
  abs_run->add_option("--out", out_path, "output JSONL (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!state.config_path.empty()) state.cfg = load_config_file(state.config_path);
    if (app.count("--jobs") > 0) state.cfg.jobs = state.jobs;

    CLI::App* sub = app.get_subcommands().front();
    state.sub = sub;
    state.take("--max-docs", state.cfg.filters.max_docs, max_docs);
    state.take("--min-input-words", state.cfg.filters.min_total_input_words, min_input_words);
    state.take("--min-summary-words", state.cfg.filters.min_summary_words, min_summary_words);
    state.take("--clone-threshold", state.cfg.filters.clone_threshold, clone_threshold);
    state.take("-L", state.cfg.L, L);
    state.take("--seed", state.cfg.seed, seed);
    state.take("--n-resamples", state.cfg.n_resamples, n_resamples);
    state.take("--lo-pct", state.cfg.lo_pct, lo_pct);
    state.take("--hi-pct", state.cfg.hi_pct, hi_pct);
    state.take("--target-words", state.cfg.target_words, target_words);
    state.take("-J", state.cfg.abstractive.max_input_tokens, j_budget);
    state.take("--k-max", state.cfg.abstractive.max_summary_tokens, k_max);
    state.take("--k-min", state.cfg.abstractive.min_summary_tokens, k_min);
    state.take("--command", state.cfg.abstractive.command, command);

    if (sub == build) return cmd_build_dataset(state, corpus_path, wiki_path, out_path);
    if (sub == stats) return cmd_stats(state, dataset_path, out_path);
    if (sub == extract) return cmd_extract(state, dataset_path, extractor_name, out_path);
    if (sub == rouge) return cmd_rouge(state, predictions_path, targets_path, out_path);
    if (sub == experiment) return cmd_experiment(state, dataset_path, out_path);
    if (sub == sweep) return cmd_sweep_l(state, dataset_path, extractor_name, l_values, out_path);
    if (sub == abs_run) return cmd_abstractive_run(state, extracts_path, out_path);
    log_error("no subcommand dispatched");
    return 1;
  } catch (const DataError& e) {
    log_error(e.what());
    return 2;
  } catch (const std::exception& e) {
    log_error(e.what());
    return 2;
  }
}
