#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "plsum/corpus_io.hpp"

namespace plsum {

// The four construction rules with their published default thresholds.
struct FilterConfig {
  int max_docs = 15;
  int min_total_input_words = 1000;
  int min_summary_words = 20;
  double clone_threshold = 0.5;
};

enum class RejectReason { TooFewInputWords, SummaryTooShort, NoMatchingDocs };

const char* to_string(RejectReason reason);

struct FilterOutcome {
  std::optional<DatasetExample> accepted;
  std::optional<RejectReason> rejected;
  int clones_removed = 0;
};

// Fraction of the summary's distinct unigrams that also occur in the
// document. 1.0 means the document contains the whole summary vocabulary,
// i.e. it very likely IS the summary's source page.
double clone_score(const std::vector<std::string>& doc_tokens,
                   const std::vector<std::string>& summary_tokens);

// True when every token in `required` occurs in `doc_tokens_set`.
bool contains_all_tokens(const std::unordered_set<std::string>& doc_token_set,
                         const std::vector<std::string>& required);

// Distinct normalized tokens of a title, in first-occurrence order.
// Raises DataError when the title normalizes to zero tokens.
std::vector<std::string> title_tokens(const std::string& title);

// Records whose normalized text contains every normalized title token, in
// corpus order, truncated at max_docs.
std::vector<CorpusRecord> match_documents(const std::string& title,
                                          const std::vector<CorpusRecord>& corpus, int max_docs);

// Clone removal first, then max_docs truncation, then the word-count checks.
// Clone-heavy candidates can therefore still fail the input-words minimum;
// removed clones never prop up the total.
FilterOutcome apply_filters(const DatasetExample& candidate, const FilterConfig& config);

struct SplitResult {
  std::vector<DatasetExample> train;
  std::vector<DatasetExample> val;
  std::vector<DatasetExample> test;
};

// Deterministic shuffle then contiguous slices: train = round(N*r0),
// val = round(N*r1), test = remainder. The three outputs partition the input.
SplitResult split_dataset(std::vector<DatasetExample> examples, const std::array<double, 3>& ratios,
                          uint64_t seed);

// Nearest-rank percentiles of per-example sizes, at 20/40/60/80/100.
struct DatasetStats {
  static constexpr std::array<int, 5> kPercentiles{20, 40, 60, 80, 100};
  std::array<long long, 5> input_size_words{};
  std::array<long long, 5> output_size_words{};
  std::array<int, 5> n_documents{};
  size_t n_examples = 0;
};

DatasetStats compute_stats(const std::vector<DatasetExample>& examples);

std::string stats_to_json(const DatasetStats& stats);
std::string stats_to_text(const DatasetStats& stats);

// End-to-end construction: stream the corpus once, attach matching records
// to every wiki title (first come, capped at max_docs), then filter and
// write the survivors in wiki order.
struct BuildReport {
  size_t wiki_pages = 0;
  size_t corpus_records = 0;
  size_t accepted = 0;
  size_t rejected_too_few_input_words = 0;
  size_t rejected_summary_too_short = 0;
  size_t rejected_no_matching_docs = 0;
  size_t clone_docs_removed = 0;
  size_t empty_titles_skipped = 0;
};

BuildReport build_dataset(std::istream& corpus, std::istream& wiki, std::ostream& out,
                          const FilterConfig& config,
                          MalformedLinePolicy policy = MalformedLinePolicy::Abort, int jobs = 0);

}  // namespace plsum
