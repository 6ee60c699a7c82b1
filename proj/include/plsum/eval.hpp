#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "plsum/corpus_io.hpp"
#include "plsum/extractive.hpp"
#include "plsum/rouge.hpp"

namespace plsum {

struct CorpusScore {
  std::vector<RougeReport> per_example;
  RougeReport mean;  // arithmetic mean of every P/R/F field
};

// Scores (predicted, target) pairs. The mean is folded in example order, so
// the parallel and serial paths agree bit for bit.
CorpusScore score_corpus(const std::vector<std::pair<std::string, std::string>>& pairs,
                         int jobs = 0);
CorpusScore score_corpus_serial(const std::vector<std::pair<std::string, std::string>>& pairs);

struct BootstrapCI {
  double lo = 0.0;
  double mean = 0.0;  // mean of the original values, not of the resamples
  double hi = 0.0;
  int n_resamples = 1000;
  double lo_pct = 2.5;
  double hi_pct = 97.5;
};

// Percentile bootstrap over sample means: n_resamples draws of |values| with
// replacement; lo/hi are nearest-rank percentiles of the resampled means.
// Resample k seeds its own generator with seed + k, which makes the result
// independent of thread count and scheduling.
BootstrapCI bootstrap_ci(const std::vector<double>& values, int n_resamples, double lo_pct,
                         double hi_pct, uint64_t seed, int jobs = 0);
BootstrapCI bootstrap_ci_serial(const std::vector<double>& values, int n_resamples, double lo_pct,
                                double hi_pct, uint64_t seed);

struct SweepPoint {
  int L = 0;
  double r2_recall_mean = 0.0;
};

// Mean bigram recall of the extract body against the target, per L.
// L = 0 selects nothing and scores exactly 0. l_values must be ascending.
std::vector<SweepPoint> l_sweep(const std::vector<DatasetExample>& examples, Extractor extractor,
                                const std::vector<int>& l_values, uint64_t seed,
                                int target_words = 100, int jobs = 0);

struct EvalParams {
  int n_resamples = 1000;
  double lo_pct = 2.5;
  double hi_pct = 97.5;
};

struct ExperimentRow {
  Extractor extractor = Extractor::Random;
  BootstrapCI r1_f;
  BootstrapCI r2_f;
  BootstrapCI rl_f;
};

struct Experiment1Result {
  std::vector<ExperimentRow> rows;  // random, tfidf, cheating
  int L = 5;
  uint64_t seed = 0;
  size_t n_examples = 0;
};

// Runs all three extractors over the dataset at the given L, scores each
// extract body against its target, and reports bootstrap CIs of the F1
// means for ROUGE-1/2/L.
Experiment1Result run_experiment1(const std::vector<DatasetExample>& examples, int L,
                                  uint64_t seed, const EvalParams& params = {},
                                  int target_words = 100, int jobs = 0);

std::string sweep_to_json(const std::vector<SweepPoint>& points);
std::string sweep_to_text(const std::vector<SweepPoint>& points);
std::string experiment_to_json(const Experiment1Result& result);
std::string experiment_to_text(const Experiment1Result& result);

}  // namespace plsum
