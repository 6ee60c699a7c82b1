#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace plsum {

// Knobs for the external abstractive model: an input token budget, output
// length bounds, and the command that runs the model.
struct AbstractiveConfig {
  int max_input_tokens = 768;   // J
  int max_summary_tokens = 256; // K_max
  int min_summary_tokens = 20;  // K_min
  std::string command;
};

// Counts tokens of one whitespace-delimited field. The default counts word
// tokens; inject a subword-aware counter to match a real model's vocabulary.
// truncate_input applies it per field and sums, so it must be additive over
// whitespace splits.
using TokenCounter = std::function<size_t(std::string_view)>;

// Longest prefix of `assembled` whose token count fits the budget, cut only
// at whitespace boundaries. "[SEP]" separators cost one token each, like any
// other field. The title (everything before the first "[SEP]" field) must
// fit entirely: losing it would strip the extract of its subject. Strings
// without a separator carry no title and are truncated freely. Idempotent;
// returns the input unchanged when nothing is cut.
std::string truncate_input(std::string_view assembled, int max_input_tokens,
                           const TokenCounter& counter = {});

struct AbstractiveItem {
  int id = 0;
  std::string summary;
  size_t token_count = 0;
  bool length_ok = true;
};

struct AbstractiveBatch {
  std::vector<AbstractiveItem> items;  // ordered by id, i.e. input order
  size_t violations = 0;               // summaries outside [K_min, K_max]
};

// One child process per batch. Writes `{"id": <int>, "input": "<str>"}` lines
// to the child, reads `{"id": <int>, "summary": "<str>"}` lines back in any
// order, and restores input order by id. A nonzero child exit or a missing,
// duplicate, or unknown id raises DataError; out-of-bounds summary lengths
// only warn and flag the item.
AbstractiveBatch invoke_external(const AbstractiveConfig& config,
                                 const std::vector<std::string>& inputs);

}  // namespace plsum
