#pragma once

#include <cstdint>
#include <string>

#include "plsum/abstractive.hpp"
#include "plsum/dataset.hpp"

namespace plsum {

// Every tunable of the pipeline with its published default. A JSON config
// file can override any subset; command-line flags override the file.
struct PipelineConfig {
  FilterConfig filters;
  int L = 5;
  uint64_t seed = 0;
  int n_resamples = 1000;
  double lo_pct = 2.5;
  double hi_pct = 97.5;
  int target_words = 100;
  AbstractiveConfig abstractive;
  int jobs = 0;  // 0 = all hardware threads
};

// Accepted keys (flat JSON object): max_docs, min_input_words,
// min_summary_words, clone_threshold, L, seed, n_resamples, lo_pct, hi_pct,
// target_words, J, k_max, k_min, command, jobs. An unknown key or a value of
// the wrong type raises DataError naming it.
void apply_config_text(PipelineConfig& config, const std::string& json_text,
                       const std::string& origin);

PipelineConfig load_config_file(const std::string& path);

}  // namespace plsum
