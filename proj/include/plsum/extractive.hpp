#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plsum/corpus_io.hpp"
#include "plsum/text.hpp"

namespace plsum {

struct ScoredSentence {
  SentenceUnit unit;
  std::optional<double> score;  // empty for the random extractor
};

struct ExtractResult {
  std::string title;  // normalized; first segment of assembled
  std::vector<ScoredSentence> selected;
  std::string assembled;  // title and sentences joined by " [SEP] "
};

enum class Extractor { Tfidf, Random, Cheating };

Extractor parse_extractor(const std::string& name);
const char* to_string(Extractor extractor);

// All sentence units of all docs, in document order: the pooled text every
// extractor selects from.
std::vector<SentenceUnit> build_super_document(const DatasetExample& ex, int target_words = 100);

// Reference scoring ops. tfidf_term is term frequency in the sentence times
// ln(|units| / number of units containing the term); zero term frequency
// short-circuits to 0. tfidf_sentence sums tfidf_term over the title's
// tokens, one addend per occurrence. These recompute their tables per call;
// the select_* functions below share one index per example instead.
double tfidf_term(const std::string& term, const SentenceUnit& sentence,
                  const std::vector<SentenceUnit>& units);
double tfidf_sentence(const SentenceUnit& sentence, const std::string& title,
                      const std::vector<SentenceUnit>& units);

// Fraction of the target's distinct bigrams that appear in the sentence.
double cheating_score(const SentenceUnit& sentence, const std::string& target);

// Top-L selection. Ordering: score descending, ties by (doc_index,
// sent_index) ascending. Fewer than L sentences means all are selected.
ExtractResult select_tfidf(const DatasetExample& ex, int L, int target_words = 100);
// Uniform L-subset in draw order; scores are null.
ExtractResult select_random(const DatasetExample& ex, int L, uint64_t seed, int target_words = 100);
// Ranks by bigram containment against the example's own summary: an oracle
// upper bound, not a usable system.
ExtractResult select_cheating(const DatasetExample& ex, int L, int target_words = 100);

ExtractResult run_extractor(Extractor extractor, const DatasetExample& ex, int L, uint64_t seed,
                            int target_words = 100);

// Selected sentence texts joined by single spaces: the assembled extract
// minus title and separators, the form that gets scored.
std::string extract_body(const ExtractResult& result);

std::string extract_result_to_line(const ExtractResult& result);

struct ExtractOptions {
  Extractor extractor = Extractor::Tfidf;
  int L = 5;
  uint64_t seed = 0;  // example i draws from seed + i
  int target_words = 100;
  int jobs = 0;
  MalformedLinePolicy policy = MalformedLinePolicy::Abort;
};

// Streams a dataset file through run_extractor, one output line per example,
// in input order. Batches examples and scores them across threads; memory
// stays bounded by the batch, not the file. Returns examples written.
size_t extract_stream(std::istream& dataset, std::ostream& out, const ExtractOptions& options);

// Single-threaded reference with identical output, kept for equality testing
// and benchmarking against the parallel path.
size_t extract_stream_serial(std::istream& dataset, std::ostream& out,
                             const ExtractOptions& options);

}  // namespace plsum
