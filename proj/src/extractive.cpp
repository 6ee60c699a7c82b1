#include "plsum/extractive.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "plsum/diag.hpp"
#include "plsum/error.hpp"
#include "plsum/parallel.hpp"
#include "plsum/rng.hpp"

namespace plsum {

namespace {

// Title terms collapsed to (token, multiplicity) in first-occurrence order,
// so score summation order is fixed no matter how hash maps iterate.
struct TitleTerm {
  std::string token;
  int multiplicity = 0;
};

std::vector<TitleTerm> collect_title_terms(const std::string& title) {
  const auto tokens = tokenize_words(normalize(title));
  if (tokens.empty()) throw DataError("title has no word tokens: " + title);
  std::vector<TitleTerm> terms;
  std::unordered_map<std::string, size_t> index;
  for (const auto& token : tokens) {
    const auto [it, inserted] = index.emplace(token, terms.size());
    if (inserted) terms.push_back({token, 1});
    else ++terms[it->second].multiplicity;
  }
  return terms;
}

std::vector<SentenceUnit> units_or_throw(const DatasetExample& ex, int target_words) {
  auto units = build_super_document(ex, target_words);
  if (units.empty()) throw DataError("example has no sentences: " + ex.title);
  return units;
}

// Indices of the top min(L, n) sentences by (score desc, doc asc, sent asc).
std::vector<size_t> top_indices(const std::vector<SentenceUnit>& units,
                                const std::vector<double>& scores, int L) {
  std::vector<size_t> order(units.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  const size_t k = std::min(static_cast<size_t>(L), order.size());
  const auto better = [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (units[a].doc_index != units[b].doc_index) return units[a].doc_index < units[b].doc_index;
    return units[a].sent_index < units[b].sent_index;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(), better);
  order.resize(k);
  return order;
}

ExtractResult assemble(const std::string& normalized_title, std::vector<SentenceUnit> units,
                       const std::vector<size_t>& chosen, const std::vector<double>* scores) {
  ExtractResult result;
  result.title = normalized_title;
  result.assembled = normalized_title;
  result.selected.reserve(chosen.size());
  for (const size_t i : chosen) {
    ScoredSentence entry;
    entry.unit = std::move(units[i]);
    if (scores) entry.score = (*scores)[i];
    result.assembled += " [SEP] ";
    result.assembled += entry.unit.text;
    result.selected.push_back(std::move(entry));
  }
  return result;
}

std::unordered_set<std::string> distinct_bigrams(const std::vector<std::string>& tokens) {
  std::unordered_set<std::string> keys;
  if (tokens.size() < 2) return keys;
  keys.reserve(tokens.size() - 1);
  for (size_t i = 0; i + 1 < tokens.size(); ++i) keys.insert(ngram_key(&tokens[i], 2));
  return keys;
}

}  // namespace

Extractor parse_extractor(const std::string& name) {
  if (name == "tfidf") return Extractor::Tfidf;
  if (name == "random") return Extractor::Random;
  if (name == "cheating") return Extractor::Cheating;
  throw DataError("unknown extractor: " + name);
}

const char* to_string(Extractor extractor) {
  switch (extractor) {
    case Extractor::Tfidf: return "tfidf";
    case Extractor::Random: return "random";
    case Extractor::Cheating: return "cheating";
  }
  return "unknown";
}

std::vector<SentenceUnit> build_super_document(const DatasetExample& ex, int target_words) {
  std::vector<SentenceUnit> units;
  for (size_t i = 0; i < ex.docs.size(); ++i) {
    auto doc_units = split_sentences(normalize(ex.docs[i]), target_words, static_cast<int>(i));
    units.insert(units.end(), std::make_move_iterator(doc_units.begin()),
                 std::make_move_iterator(doc_units.end()));
  }
  return units;
}

double tfidf_term(const std::string& term, const SentenceUnit& sentence,
                  const std::vector<SentenceUnit>& units) {
  if (units.empty()) throw DataError("tfidf_term: empty super document");
  int tf = 0;
  for (const auto& token : tokenize_words(sentence.text)) {
    if (token == term) ++tf;
  }
  if (tf == 0) return 0.0;
  int df = 0;
  for (const auto& unit : units) {
    for (const auto& token : tokenize_words(unit.text)) {
      if (token == term) {
        ++df;
        break;
      }
    }
  }
  return tf * std::log(static_cast<double>(units.size()) / static_cast<double>(df));
}

double tfidf_sentence(const SentenceUnit& sentence, const std::string& title,
                      const std::vector<SentenceUnit>& units) {
  double score = 0.0;
  for (const auto& term : collect_title_terms(title)) {
    score += term.multiplicity * tfidf_term(term.token, sentence, units);
  }
  return score;
}

double cheating_score(const SentenceUnit& sentence, const std::string& target) {
  const auto target_tokens = tokenize_words(normalize(target));
  const auto target_bigrams = distinct_bigrams(target_tokens);
  if (target_bigrams.empty()) throw DataError("cheating score: target has fewer than 2 tokens");
  const auto sentence_bigrams = distinct_bigrams(tokenize_words(sentence.text));
  size_t shared = 0;
  for (const auto& key : sentence_bigrams) {
    if (target_bigrams.count(key)) ++shared;
  }
  return static_cast<double>(shared) / static_cast<double>(target_bigrams.size());
}

ExtractResult select_tfidf(const DatasetExample& ex, int L, int target_words) {
  if (L < 1) throw std::invalid_argument("select_tfidf: L must be >= 1");
  auto units = units_or_throw(ex, target_words);
  const auto terms = collect_title_terms(ex.title);

  // tf per (unit, title term) and per-term document frequency in one pass
  std::unordered_map<std::string, size_t> term_slot;
  for (size_t t = 0; t < terms.size(); ++t) term_slot.emplace(terms[t].token, t);
  std::vector<int> tf(units.size() * terms.size(), 0);
  std::vector<int> df(terms.size(), 0);
  for (size_t u = 0; u < units.size(); ++u) {
    for (const auto& token : tokenize_words(units[u].text)) {
      const auto it = term_slot.find(token);
      if (it == term_slot.end()) continue;
      int& cell = tf[u * terms.size() + it->second];
      if (cell == 0) ++df[it->second];
      ++cell;
    }
  }

  std::vector<double> idf(terms.size(), 0.0);
  for (size_t t = 0; t < terms.size(); ++t) {
    if (df[t] > 0) {
      idf[t] = std::log(static_cast<double>(units.size()) / static_cast<double>(df[t]));
    }
  }
  std::vector<double> scores(units.size(), 0.0);
  for (size_t u = 0; u < units.size(); ++u) {
    double score = 0.0;
    for (size_t t = 0; t < terms.size(); ++t) {
      score += terms[t].multiplicity * tf[u * terms.size() + t] * idf[t];
    }
    scores[u] = score;
  }

  const auto chosen = top_indices(units, scores, L);
  return assemble(normalize(ex.title), std::move(units), chosen, &scores);
}

ExtractResult select_random(const DatasetExample& ex, int L, uint64_t seed, int target_words) {
  if (L < 1) throw std::invalid_argument("select_random: L must be >= 1");
  auto units = units_or_throw(ex, target_words);
  Rng rng(seed);
  const auto chosen =
      rng.sample_without_replacement(units.size(), static_cast<size_t>(std::max(L, 0)));
  return assemble(normalize(ex.title), std::move(units), chosen, nullptr);
}

ExtractResult select_cheating(const DatasetExample& ex, int L, int target_words) {
  if (L < 1) throw std::invalid_argument("select_cheating: L must be >= 1");
  auto units = units_or_throw(ex, target_words);
  const auto target_bigrams = distinct_bigrams(tokenize_words(normalize(ex.summary)));
  if (target_bigrams.empty()) {
    throw DataError("cheating extractor: summary has fewer than 2 tokens: " + ex.title);
  }
  std::vector<double> scores(units.size(), 0.0);
  for (size_t u = 0; u < units.size(); ++u) {
    const auto unit_bigrams = distinct_bigrams(tokenize_words(units[u].text));
    size_t shared = 0;
    for (const auto& key : unit_bigrams) {
      if (target_bigrams.count(key)) ++shared;
    }
    scores[u] = static_cast<double>(shared) / static_cast<double>(target_bigrams.size());
  }
  const auto chosen = top_indices(units, scores, L);
  return assemble(normalize(ex.title), std::move(units), chosen, &scores);
}

ExtractResult run_extractor(Extractor extractor, const DatasetExample& ex, int L, uint64_t seed,
                            int target_words) {
  switch (extractor) {
    case Extractor::Tfidf: return select_tfidf(ex, L, target_words);
    case Extractor::Random: return select_random(ex, L, seed, target_words);
    case Extractor::Cheating: return select_cheating(ex, L, target_words);
  }
  throw std::invalid_argument("run_extractor: bad extractor");
}

std::string extract_body(const ExtractResult& result) {
  std::string body;
  for (const auto& entry : result.selected) {
    if (!body.empty()) body.push_back(' ');
    body += entry.unit.text;
  }
  return body;
}

std::string extract_result_to_line(const ExtractResult& result) {
  nlohmann::ordered_json line;
  line["title"] = result.title;
  line["assembled"] = result.assembled;
  auto& selected = line["selected"] = nlohmann::ordered_json::array();
  for (const auto& entry : result.selected) {
    nlohmann::ordered_json item;
    item["doc"] = entry.unit.doc_index;
    item["sent"] = entry.unit.sent_index;
    if (entry.score) item["score"] = *entry.score;
    else item["score"] = nullptr;
    selected.push_back(std::move(item));
  }
  return line.dump();
}

namespace {

// One example through the configured extractor; i is its 0-based position in
// the file and feeds the per-example seed.
std::string extract_one(const DatasetExample& ex, size_t i, const ExtractOptions& options) {
  const ExtractResult result =
      run_extractor(options.extractor, ex, options.L, options.seed + i, options.target_words);
  return extract_result_to_line(result);
}

}  // namespace

size_t extract_stream(std::istream& dataset, std::ostream& out, const ExtractOptions& options) {
  constexpr size_t kBatch = 256;
  ExampleReader reader(dataset, options.policy);
  const int n_jobs = effective_jobs(options.jobs);

  size_t next_index = 0;
  size_t written = 0;
  std::vector<DatasetExample> batch;
  std::vector<std::string> lines, errors;
  batch.reserve(kBatch);
  for (;;) {
    batch.clear();
    while (batch.size() < kBatch) {
      auto ex = reader.next();
      if (!ex) break;
      batch.push_back(std::move(*ex));
    }
    if (batch.empty()) break;

    lines.assign(batch.size(), {});
    errors.assign(batch.size(), {});
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
    for (long b = 0; b < static_cast<long>(batch.size()); ++b) {
      const size_t slot = static_cast<size_t>(b);
      try {
        lines[slot] = extract_one(batch[slot], next_index + slot, options);
      } catch (const std::exception& err) {
        errors[slot] = err.what();
      }
    }
    for (size_t slot = 0; slot < batch.size(); ++slot) {
      if (!errors[slot].empty()) {
        if (options.policy == MalformedLinePolicy::Abort) throw DataError(errors[slot]);
        log_warn(errors[slot] + " (skipped)");
        continue;
      }
      out << lines[slot] << '\n';
      ++written;
    }
    next_index += batch.size();
  }
  return written;
}

size_t extract_stream_serial(std::istream& dataset, std::ostream& out,
                             const ExtractOptions& options) {
  ExampleReader reader(dataset, options.policy);
  size_t index = 0;
  size_t written = 0;
  while (auto ex = reader.next()) {
    try {
      out << extract_one(*ex, index, options) << '\n';
      ++written;
    } catch (const std::exception& err) {
      if (options.policy == MalformedLinePolicy::Abort) throw DataError(err.what());
      log_warn(std::string(err.what()) + " (skipped)");
    }
    ++index;
  }
  return written;
}

}  // namespace plsum
