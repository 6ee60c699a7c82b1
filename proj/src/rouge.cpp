#include "plsum/rouge.hpp"

#include <algorithm>
#include <stdexcept>

#include "plsum/text.hpp"

namespace plsum {

PrfScore make_prf(double precision, double recall) {
  PrfScore score;
  score.precision = precision;
  score.recall = recall;
  if (precision + recall > 0) score.f1 = 2.0 * precision * recall / (precision + recall);
  return score;
}

PrfScore rouge_n(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference, int n) {
  if (n < 1) throw std::invalid_argument("rouge_n: n must be >= 1");
  const NgramBag cand = ngrams(candidate, n);
  const NgramBag ref = ngrams(reference, n);
  const int cand_total = cand.total();
  const int ref_total = ref.total();
  if (cand_total == 0 || ref_total == 0) return {};

  // iterate the smaller map
  const NgramBag& small = cand.counts.size() <= ref.counts.size() ? cand : ref;
  const NgramBag& large = cand.counts.size() <= ref.counts.size() ? ref : cand;
  long long matched = 0;
  for (const auto& [key, count] : small.counts) {
    const auto it = large.counts.find(key);
    if (it != large.counts.end()) matched += std::min(count, it->second);
  }
  const double precision = static_cast<double>(matched) / static_cast<double>(cand_total);
  const double recall = static_cast<double>(matched) / static_cast<double>(ref_total);
  return make_prf(precision, recall);
}

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::vector<std::string>& rows = a.size() >= b.size() ? a : b;
  const std::vector<std::string>& cols = a.size() >= b.size() ? b : a;
  if (cols.empty()) return 0;
  std::vector<size_t> prev(cols.size() + 1, 0), cur(cols.size() + 1, 0);
  for (size_t i = 1; i <= rows.size(); ++i) {
    for (size_t j = 1; j <= cols.size(); ++j) {
      if (rows[i - 1] == cols[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[cols.size()];
}

PrfScore rouge_l(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const double m = static_cast<double>(lcs_length(candidate, reference));
  return make_prf(m / static_cast<double>(candidate.size()),
                  m / static_cast<double>(reference.size()));
}

RougeReport score_pair(std::string_view predicted, std::string_view target) {
  const auto cand = tokenize_words(normalize(predicted));
  const auto ref = tokenize_words(normalize(target));
  RougeReport report;
  report.r1 = rouge_n(cand, ref, 1);
  report.r2 = rouge_n(cand, ref, 2);
  report.rl = rouge_l(cand, ref);
  return report;
}

}  // namespace plsum
