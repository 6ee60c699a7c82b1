#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace plsum {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// f1 = 2PR/(P+R), or 0 when both sides are 0
PrfScore make_prf(double precision, double recall);

struct RougeReport {
  PrfScore r1;
  PrfScore r2;
  PrfScore rl;
};

// N-gram overlap with clipped multiset counting: each distinct n-gram
// matches min(count in candidate, count in reference) times. Recall divides
// by the reference n-gram total, precision by the candidate's; an empty side
// yields zeros.
PrfScore rouge_n(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference, int n);

// Classic longest-common-subsequence length, O(|a|*|b|) time and
// O(min(|a|,|b|)) memory.
size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

PrfScore rouge_l(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference);

// Normalizes and tokenizes both strings, then computes ROUGE-1/2/L.
RougeReport score_pair(std::string_view predicted, std::string_view target);

}  // namespace plsum
