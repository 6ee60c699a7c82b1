#include "plsum/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "plsum/error.hpp"
#include "plsum/parallel.hpp"
#include "plsum/rng.hpp"
#include "plsum/text.hpp"

namespace plsum {

namespace {

RougeReport fold_mean(const std::vector<RougeReport>& reports) {
  RougeReport sum;
  for (const auto& r : reports) {
    sum.r1.precision += r.r1.precision;
    sum.r1.recall += r.r1.recall;
    sum.r1.f1 += r.r1.f1;
    sum.r2.precision += r.r2.precision;
    sum.r2.recall += r.r2.recall;
    sum.r2.f1 += r.r2.f1;
    sum.rl.precision += r.rl.precision;
    sum.rl.recall += r.rl.recall;
    sum.rl.f1 += r.rl.f1;
  }
  const double n = static_cast<double>(reports.size());
  for (auto* s : {&sum.r1, &sum.r2, &sum.rl}) {
    s->precision /= n;
    s->recall /= n;
    s->f1 /= n;
  }
  return sum;
}

// rank ceil(pct * n / 100), 1-indexed, clamped to [1, n]
size_t percentile_rank(double pct, size_t n) {
  const double raw = std::ceil(pct * static_cast<double>(n) / 100.0);
  long long rank = static_cast<long long>(raw);
  if (rank < 1) rank = 1;
  if (rank > static_cast<long long>(n)) rank = static_cast<long long>(n);
  return static_cast<size_t>(rank);
}

double resample_mean(const std::vector<double>& values, uint64_t resample_seed) {
  Rng rng(resample_seed);
  const size_t n = values.size();
  double sum = 0.0;
  for (size_t j = 0; j < n; ++j) sum += values[rng.next_below(n)];
  return sum / static_cast<double>(n);
}

BootstrapCI finish_ci(const std::vector<double>& values, std::vector<double> means,
                      int n_resamples, double lo_pct, double hi_pct) {
  std::sort(means.begin(), means.end());
  BootstrapCI ci;
  ci.n_resamples = n_resamples;
  ci.lo_pct = lo_pct;
  ci.hi_pct = hi_pct;
  ci.lo = means[percentile_rank(lo_pct, means.size()) - 1];
  ci.hi = means[percentile_rank(hi_pct, means.size()) - 1];
  double sum = 0.0;
  for (const double v : values) sum += v;
  ci.mean = sum / static_cast<double>(values.size());
  return ci;
}

void check_bootstrap_args(const std::vector<double>& values, int n_resamples, double lo_pct,
                          double hi_pct) {
  if (values.empty()) throw DataError("bootstrap: no values");
  if (n_resamples < 1) throw std::invalid_argument("bootstrap: n_resamples must be >= 1");
  if (!(lo_pct >= 0.0 && lo_pct < hi_pct && hi_pct <= 100.0)) {
    throw std::invalid_argument("bootstrap: need 0 <= lo_pct < hi_pct <= 100");
  }
}

// Extract body token recall of 2-grams against the target, for one example.
double r2_recall_one(const DatasetExample& ex, Extractor extractor, int L, uint64_t seed,
                     int target_words) {
  const ExtractResult result = run_extractor(extractor, ex, L, seed, target_words);
  const auto body_tokens = tokenize_words(extract_body(result));
  const auto target_tokens = tokenize_words(normalize(ex.summary));
  return rouge_n(body_tokens, target_tokens, 2).recall;
}

void rethrow_if_failed(const std::string& first_error) {
  if (!first_error.empty()) throw DataError(first_error);
}

}  // namespace

CorpusScore score_corpus(const std::vector<std::pair<std::string, std::string>>& pairs, int jobs) {
  if (pairs.empty()) throw DataError("score_corpus: no pairs");
  CorpusScore score;
  score.per_example.assign(pairs.size(), {});
  const int n_jobs = effective_jobs(jobs);
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
  for (long i = 0; i < static_cast<long>(pairs.size()); ++i) {
    const size_t k = static_cast<size_t>(i);
    score.per_example[k] = score_pair(pairs[k].first, pairs[k].second);
  }
  score.mean = fold_mean(score.per_example);
  return score;
}

CorpusScore score_corpus_serial(const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (pairs.empty()) throw DataError("score_corpus: no pairs");
  CorpusScore score;
  score.per_example.reserve(pairs.size());
  for (const auto& [predicted, target] : pairs) {
    score.per_example.push_back(score_pair(predicted, target));
  }
  score.mean = fold_mean(score.per_example);
  return score;
}

BootstrapCI bootstrap_ci(const std::vector<double>& values, int n_resamples, double lo_pct,
                         double hi_pct, uint64_t seed, int jobs) {
  check_bootstrap_args(values, n_resamples, lo_pct, hi_pct);
  std::vector<double> means(static_cast<size_t>(n_resamples), 0.0);
  const int n_jobs = effective_jobs(jobs);
#pragma omp parallel for schedule(static) num_threads(n_jobs)
  for (long k = 0; k < static_cast<long>(n_resamples); ++k) {
    means[static_cast<size_t>(k)] = resample_mean(values, seed + static_cast<uint64_t>(k));
  }
  return finish_ci(values, std::move(means), n_resamples, lo_pct, hi_pct);
}

BootstrapCI bootstrap_ci_serial(const std::vector<double>& values, int n_resamples, double lo_pct,
                                double hi_pct, uint64_t seed) {
  check_bootstrap_args(values, n_resamples, lo_pct, hi_pct);
  std::vector<double> means;
  means.reserve(static_cast<size_t>(n_resamples));
  for (int k = 0; k < n_resamples; ++k) {
    means.push_back(resample_mean(values, seed + static_cast<uint64_t>(k)));
  }
  return finish_ci(values, std::move(means), n_resamples, lo_pct, hi_pct);
}

std::vector<SweepPoint> l_sweep(const std::vector<DatasetExample>& examples, Extractor extractor,
                                const std::vector<int>& l_values, uint64_t seed, int target_words,
                                int jobs) {
  if (examples.empty()) throw DataError("l_sweep: no examples");
  if (!std::is_sorted(l_values.begin(), l_values.end())) {
    throw std::invalid_argument("l_sweep: l_values must be ascending");
  }
  if (!l_values.empty() && l_values.front() < 0) {
    throw std::invalid_argument("l_sweep: L must be >= 0");
  }
  const int n_jobs = effective_jobs(jobs);
  std::vector<SweepPoint> points;
  points.reserve(l_values.size());
  std::vector<double> recalls(examples.size(), 0.0);
  for (const int L : l_values) {
    SweepPoint point;
    point.L = L;
    if (L == 0) {
      points.push_back(point);  // empty extract, recall exactly 0
      continue;
    }
    std::string first_error;
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
    for (long i = 0; i < static_cast<long>(examples.size()); ++i) {
      const size_t k = static_cast<size_t>(i);
      try {
        recalls[k] = r2_recall_one(examples[k], extractor, L, seed + k, target_words);
      } catch (const std::exception& err) {
#pragma omp critical
        if (first_error.empty()) first_error = err.what();
      }
    }
    rethrow_if_failed(first_error);
    double sum = 0.0;
    for (const double r : recalls) sum += r;
    point.r2_recall_mean = sum / static_cast<double>(examples.size());
    points.push_back(point);
  }
  return points;
}

Experiment1Result run_experiment1(const std::vector<DatasetExample>& examples, int L,
                                  uint64_t seed, const EvalParams& params, int target_words,
                                  int jobs) {
  if (examples.empty()) throw DataError("experiment: no examples");
  Experiment1Result result;
  result.L = L;
  result.seed = seed;
  result.n_examples = examples.size();
  const int n_jobs = effective_jobs(jobs);

  for (const Extractor extractor : {Extractor::Random, Extractor::Tfidf, Extractor::Cheating}) {
    std::vector<RougeReport> reports(examples.size());
    std::string first_error;
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
    for (long i = 0; i < static_cast<long>(examples.size()); ++i) {
      const size_t k = static_cast<size_t>(i);
      try {
        const ExtractResult extract =
            run_extractor(extractor, examples[k], L, seed + k, target_words);
        reports[k] = score_pair(extract_body(extract), examples[k].summary);
      } catch (const std::exception& err) {
#pragma omp critical
        if (first_error.empty()) first_error = err.what();
      }
    }
    rethrow_if_failed(first_error);

    std::vector<double> r1_f(examples.size()), r2_f(examples.size()), rl_f(examples.size());
    for (size_t k = 0; k < reports.size(); ++k) {
      r1_f[k] = reports[k].r1.f1;
      r2_f[k] = reports[k].r2.f1;
      rl_f[k] = reports[k].rl.f1;
    }
    ExperimentRow row;
    row.extractor = extractor;
    row.r1_f = bootstrap_ci(r1_f, params.n_resamples, params.lo_pct, params.hi_pct, seed, jobs);
    row.r2_f = bootstrap_ci(r2_f, params.n_resamples, params.lo_pct, params.hi_pct, seed, jobs);
    row.rl_f = bootstrap_ci(rl_f, params.n_resamples, params.lo_pct, params.hi_pct, seed, jobs);
    result.rows.push_back(row);
  }
  return result;
}

std::string sweep_to_json(const std::vector<SweepPoint>& points) {
  nlohmann::ordered_json doc;
  doc["metric"] = "r2_recall_mean";
  auto& arr = doc["points"] = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    arr.push_back({{"L", p.L}, {"r2_recall_mean", p.r2_recall_mean}});
  }
  return doc.dump();
}

std::string sweep_to_text(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << std::setw(4) << "L" << std::setw(18) << "r2_recall_mean" << "\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& p : points) {
    out << std::setw(4) << p.L << std::setw(18) << p.r2_recall_mean << "\n";
  }
  return out.str();
}

namespace {

nlohmann::ordered_json ci_to_json(const BootstrapCI& ci) {
  return {{"lo", ci.lo}, {"mean", ci.mean}, {"hi", ci.hi}};
}

std::string ci_to_text(const BootstrapCI& ci) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << ci.mean << " [" << ci.lo << ", " << ci.hi << "]";
  return out.str();
}

}  // namespace

std::string experiment_to_json(const Experiment1Result& result) {
  nlohmann::ordered_json doc;
  doc["L"] = result.L;
  doc["seed"] = result.seed;
  doc["n_examples"] = result.n_examples;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json entry;
    entry["extractor"] = to_string(row.extractor);
    entry["r1_f"] = ci_to_json(row.r1_f);
    entry["r2_f"] = ci_to_json(row.r2_f);
    entry["rl_f"] = ci_to_json(row.rl_f);
    rows.push_back(std::move(entry));
  }
  return doc.dump();
}

std::string experiment_to_text(const Experiment1Result& result) {
  std::ostringstream out;
  out << "examples: " << result.n_examples << "  L: " << result.L << "  seed: " << result.seed
      << "\n";
  out << std::left << std::setw(10) << "extractor" << std::setw(28) << "R1 F mean [lo, hi]"
      << std::setw(28) << "R2 F mean [lo, hi]" << std::setw(28) << "RL F mean [lo, hi]" << "\n";
  for (const auto& row : result.rows) {
    out << std::left << std::setw(10) << to_string(row.extractor) << std::setw(28)
        << ci_to_text(row.r1_f) << std::setw(28) << ci_to_text(row.r2_f) << std::setw(28)
        << ci_to_text(row.rl_f) << "\n";
  }
  return out.str();
}

}  // namespace plsum
