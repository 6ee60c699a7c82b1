#include "plsum/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "plsum/diag.hpp"
#include "plsum/error.hpp"
#include "plsum/parallel.hpp"
#include "plsum/rng.hpp"
#include "plsum/text.hpp"

namespace plsum {

namespace {

std::unordered_set<std::string> distinct(const std::vector<std::string>& tokens) {
  return {tokens.begin(), tokens.end()};
}

long long doc_words_total(const std::vector<std::string>& docs) {
  long long total = 0;
  for (const auto& doc : docs) total += static_cast<long long>(count_words(doc));
  return total;
}

// value at rank ceil(p/100 * N), 1-indexed on the sorted list; integer
// arithmetic keeps the rank exact
template <typename T>
T nearest_rank(const std::vector<T>& sorted, int pct) {
  const long long n = static_cast<long long>(sorted.size());
  long long rank = (static_cast<long long>(pct) * n + 99) / 100;
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[static_cast<size_t>(rank - 1)];
}

}  // namespace

const char* to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::TooFewInputWords: return "TooFewInputWords";
    case RejectReason::SummaryTooShort: return "SummaryTooShort";
    case RejectReason::NoMatchingDocs: return "NoMatchingDocs";
  }
  return "unknown";
}

double clone_score(const std::vector<std::string>& doc_tokens,
                   const std::vector<std::string>& summary_tokens) {
  const auto summary_set = distinct(summary_tokens);
  if (summary_set.empty()) throw DataError("clone_score: summary has no tokens");
  const auto doc_set = distinct(doc_tokens);
  size_t shared = 0;
  for (const auto& token : summary_set) {
    if (doc_set.count(token)) ++shared;
  }
  return static_cast<double>(shared) / static_cast<double>(summary_set.size());
}

bool contains_all_tokens(const std::unordered_set<std::string>& doc_token_set,
                         const std::vector<std::string>& required) {
  for (const auto& token : required) {
    if (!doc_token_set.count(token)) return false;
  }
  return true;
}

std::vector<std::string> title_tokens(const std::string& title) {
  std::vector<std::string> tokens = tokenize_words(normalize(title));
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (auto& token : tokens) {
    if (seen.insert(token).second) out.push_back(std::move(token));
  }
  if (out.empty()) throw DataError("title has no word tokens: " + title);
  return out;
}

std::vector<CorpusRecord> match_documents(const std::string& title,
                                          const std::vector<CorpusRecord>& corpus, int max_docs) {
  const auto required = title_tokens(title);
  std::vector<CorpusRecord> matched;
  if (max_docs <= 0) return matched;
  for (const auto& rec : corpus) {
    const auto doc_set = distinct(tokenize_words(normalize(rec.text)));
    if (contains_all_tokens(doc_set, required)) {
      matched.push_back(rec);
      if (static_cast<int>(matched.size()) == max_docs) break;
    }
  }
  return matched;
}

FilterOutcome apply_filters(const DatasetExample& candidate, const FilterConfig& config) {
  FilterOutcome outcome;
  const auto summary_tokens = tokenize_words(normalize(candidate.summary));

  std::vector<std::string> kept;
  kept.reserve(candidate.docs.size());
  for (const auto& doc : candidate.docs) {
    // a wordless summary has no vocabulary to clone
    if (!summary_tokens.empty() &&
        clone_score(tokenize_words(normalize(doc)), summary_tokens) > config.clone_threshold) {
      ++outcome.clones_removed;
      continue;
    }
    kept.push_back(doc);
  }
  if (config.max_docs >= 0 && static_cast<int>(kept.size()) > config.max_docs) {
    kept.resize(static_cast<size_t>(config.max_docs));
  }

  if (doc_words_total(kept) < config.min_total_input_words) {
    outcome.rejected = RejectReason::TooFewInputWords;
    return outcome;
  }
  if (static_cast<long long>(summary_tokens.size()) < config.min_summary_words) {
    outcome.rejected = RejectReason::SummaryTooShort;
    return outcome;
  }
  if (kept.empty()) {
    outcome.rejected = RejectReason::NoMatchingDocs;
    return outcome;
  }
  DatasetExample accepted;
  accepted.title = candidate.title;
  accepted.summary = candidate.summary;
  accepted.docs = std::move(kept);
  outcome.accepted = std::move(accepted);
  return outcome;
}

SplitResult split_dataset(std::vector<DatasetExample> examples, const std::array<double, 3>& ratios,
                          uint64_t seed) {
  double sum = 0;
  for (const double r : ratios) {
    if (r < 0) throw std::invalid_argument("split_dataset: ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("split_dataset: ratios must sum to 1");
  const size_t n = examples.size();
  if (n < 3) throw DataError("split_dataset: need at least 3 examples, got " + std::to_string(n));

  Rng rng(seed);
  rng.shuffle(examples);

  size_t n_train = static_cast<size_t>(std::llround(static_cast<double>(n) * ratios[0]));
  n_train = std::min(n_train, n);
  size_t n_val = static_cast<size_t>(std::llround(static_cast<double>(n) * ratios[1]));
  n_val = std::min(n_val, n - n_train);

  SplitResult split;
  split.train.assign(std::make_move_iterator(examples.begin()),
                     std::make_move_iterator(examples.begin() + static_cast<long>(n_train)));
  split.val.assign(std::make_move_iterator(examples.begin() + static_cast<long>(n_train)),
                   std::make_move_iterator(examples.begin() + static_cast<long>(n_train + n_val)));
  split.test.assign(std::make_move_iterator(examples.begin() + static_cast<long>(n_train + n_val)),
                    std::make_move_iterator(examples.end()));
  return split;
}

DatasetStats compute_stats(const std::vector<DatasetExample>& examples) {
  if (examples.empty()) throw DataError("compute_stats: empty dataset");
  std::vector<long long> input_sizes, output_sizes;
  std::vector<int> doc_counts;
  input_sizes.reserve(examples.size());
  output_sizes.reserve(examples.size());
  doc_counts.reserve(examples.size());
  for (const auto& ex : examples) {
    input_sizes.push_back(doc_words_total(ex.docs));
    output_sizes.push_back(static_cast<long long>(count_words(ex.summary)));
    doc_counts.push_back(static_cast<int>(ex.docs.size()));
  }
  std::sort(input_sizes.begin(), input_sizes.end());
  std::sort(output_sizes.begin(), output_sizes.end());
  std::sort(doc_counts.begin(), doc_counts.end());

  DatasetStats stats;
  stats.n_examples = examples.size();
  for (size_t i = 0; i < DatasetStats::kPercentiles.size(); ++i) {
    const int pct = DatasetStats::kPercentiles[i];
    stats.input_size_words[i] = nearest_rank(input_sizes, pct);
    stats.output_size_words[i] = nearest_rank(output_sizes, pct);
    stats.n_documents[i] = nearest_rank(doc_counts, pct);
  }
  return stats;
}

std::string stats_to_json(const DatasetStats& stats) {
  nlohmann::ordered_json doc;
  doc["n_examples"] = stats.n_examples;
  doc["percentiles"] = DatasetStats::kPercentiles;
  doc["input_size_words"] = stats.input_size_words;
  doc["output_size_words"] = stats.output_size_words;
  doc["n_documents"] = stats.n_documents;
  return doc.dump();
}

std::string stats_to_text(const DatasetStats& stats) {
  std::ostringstream out;
  out << "examples: " << stats.n_examples << "\n";
  out << std::setw(10) << "percentile" << std::setw(14) << "input_words" << std::setw(14)
      << "summary_words" << std::setw(11) << "documents" << "\n";
  for (size_t i = 0; i < DatasetStats::kPercentiles.size(); ++i) {
    out << std::setw(10) << DatasetStats::kPercentiles[i] << std::setw(14)
        << stats.input_size_words[i] << std::setw(14) << stats.output_size_words[i]
        << std::setw(11) << stats.n_documents[i] << "\n";
  }
  return out.str();
}

BuildReport build_dataset(std::istream& corpus, std::istream& wiki, std::ostream& out,
                          const FilterConfig& config, MalformedLinePolicy policy, int jobs) {
  BuildReport report;

  struct PageState {
    WikiPage page;
    std::vector<std::string> required;  // distinct normalized title tokens
    std::vector<std::string> docs;      // raw matched texts, corpus order
    bool active = false;
  };
  std::vector<PageState> pages;
  {
    WikiReader reader(wiki, policy);
    while (auto page = reader.next()) {
      ++report.wiki_pages;
      PageState state;
      state.page = std::move(*page);
      try {
        state.required = title_tokens(state.page.title);
        state.active = true;
      } catch (const DataError& err) {
        if (policy == MalformedLinePolicy::Abort) {
          throw DataError("wiki line " + std::to_string(reader.line_number()) + ": " + err.what());
        }
        log_warn("wiki line " + std::to_string(reader.line_number()) + ": " + err.what() +
                 " (skipped)");
        ++report.empty_titles_skipped;
      }
      pages.push_back(std::move(state));
    }
  }

  // One pass over the corpus; every record is offered to every title that
  // still has room. First come, first attached.
  {
    CorpusReader reader(corpus, policy);
    const size_t cap = config.max_docs > 0 ? static_cast<size_t>(config.max_docs) : 0;
    while (auto rec = reader.next()) {
      ++report.corpus_records;
      if (cap == 0) continue;
      const auto doc_set = distinct(tokenize_words(normalize(rec->text)));
      if (doc_set.empty()) continue;
      for (auto& state : pages) {
        if (!state.active || state.docs.size() >= cap) continue;
        if (contains_all_tokens(doc_set, state.required)) state.docs.push_back(rec->text);
      }
    }
  }

  std::vector<FilterOutcome> outcomes(pages.size());
  const int n_jobs = effective_jobs(jobs);
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
  for (long i = 0; i < static_cast<long>(pages.size()); ++i) {
    auto& state = pages[static_cast<size_t>(i)];
    if (!state.active || state.docs.empty()) continue;
    DatasetExample candidate;
    candidate.title = state.page.title;
    candidate.summary = state.page.summary;
    candidate.docs = std::move(state.docs);
    outcomes[static_cast<size_t>(i)] = apply_filters(candidate, config);
  }

  for (size_t i = 0; i < pages.size(); ++i) {
    if (!pages[i].active) continue;
    auto& outcome = outcomes[i];
    report.clone_docs_removed += static_cast<size_t>(outcome.clones_removed);
    if (outcome.accepted) {
      write_example_line(out, *outcome.accepted);
      ++report.accepted;
      continue;
    }
    const RejectReason reason = outcome.rejected ? *outcome.rejected : RejectReason::NoMatchingDocs;
    switch (reason) {
      case RejectReason::TooFewInputWords: ++report.rejected_too_few_input_words; break;
      case RejectReason::SummaryTooShort: ++report.rejected_summary_too_short; break;
      case RejectReason::NoMatchingDocs: ++report.rejected_no_matching_docs; break;
    }
  }
  return report;
}

}  // namespace plsum
