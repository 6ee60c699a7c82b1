#include "plsum/abstractive.hpp"

#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "plsum/diag.hpp"
#include "plsum/error.hpp"
#include "plsum/subprocess.hpp"
#include "plsum/text.hpp"

namespace plsum {

namespace {

using nlohmann::json;

std::vector<std::string_view> whitespace_fields(std::string_view text) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r' || text[i] == '\v' || text[i] == '\f')) {
      ++i;
    }
    const size_t start = i;
    while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                                text[i] == '\r' || text[i] == '\v' || text[i] == '\f')) {
      ++i;
    }
    if (i > start) fields.push_back(text.substr(start, i - start));
  }
  return fields;
}

}  // namespace

std::string truncate_input(std::string_view assembled, int max_input_tokens,
                           const TokenCounter& counter) {
  if (max_input_tokens < 1) {
    throw std::invalid_argument("truncate_input: token budget must be >= 1");
  }
  const TokenCounter count = counter ? counter : TokenCounter(count_words);
  const auto fields = whitespace_fields(assembled);

  size_t title_tokens = 0;
  bool has_separator = false;
  for (const auto field : fields) {
    if (field == "[SEP]") {
      has_separator = true;
      break;
    }
    title_tokens += count(field);
  }
  if (has_separator && title_tokens > static_cast<size_t>(max_input_tokens)) {
    throw DataError("truncate_input: title alone has " + std::to_string(title_tokens) +
                    " tokens, over the budget of " + std::to_string(max_input_tokens));
  }

  size_t used = 0;
  size_t kept = 0;
  for (; kept < fields.size(); ++kept) {
    const size_t cost = count(fields[kept]);
    if (used + cost > static_cast<size_t>(max_input_tokens)) break;
    used += cost;
  }
  if (kept == fields.size()) return std::string(assembled);

  std::string out;
  out.reserve(assembled.size());
  for (size_t i = 0; i < kept; ++i) {
    if (i) out.push_back(' ');
    out.append(fields[i]);
  }
  return out;
}

AbstractiveBatch invoke_external(const AbstractiveConfig& config,
                                 const std::vector<std::string>& inputs) {
  if (config.command.empty()) throw DataError("no model command configured");

  std::string request;
  for (size_t i = 0; i < inputs.size(); ++i) {
    request += "{\"id\": " + std::to_string(i) + ", \"input\": " + json(inputs[i]).dump() + "}\n";
  }

  const SubprocessResult run = run_subprocess_lines(config.command, request);
  if (run.exit_code != 0) {
    std::string detail = run.stderr_data;
    if (detail.size() > 500) detail = detail.substr(detail.size() - 500);
    const std::string how = run.exit_code < 0
                                ? "killed by signal " + std::to_string(-run.exit_code)
                                : "exited with status " + std::to_string(run.exit_code);
    throw DataError("model command " + how + (detail.empty() ? "" : ": " + detail));
  }

  AbstractiveBatch batch;
  batch.items.assign(inputs.size(), {});
  std::vector<bool> seen(inputs.size(), false);
  size_t line_no = 0;
  size_t start = 0;
  while (start <= run.stdout_data.size()) {
    size_t end = run.stdout_data.find('\n', start);
    if (end == std::string::npos) end = run.stdout_data.size();
    const std::string line = run.stdout_data.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw DataError("model output line " + std::to_string(line_no) + ": not a JSON object");
    }
    const auto id_it = obj.find("id");
    if (id_it == obj.end() || !id_it->is_number_integer()) {
      throw DataError("model output line " + std::to_string(line_no) + ": missing integer id");
    }
    const auto summary_it = obj.find("summary");
    if (summary_it == obj.end() || !summary_it->is_string()) {
      throw DataError("model output line " + std::to_string(line_no) + ": missing key summary");
    }
    const long long id = id_it->get<long long>();
    if (id < 0 || id >= static_cast<long long>(inputs.size())) {
      throw DataError("model output line " + std::to_string(line_no) + ": unknown id " +
                      std::to_string(id));
    }
    if (seen[static_cast<size_t>(id)]) {
      throw DataError("model output line " + std::to_string(line_no) + ": duplicate id " +
                      std::to_string(id));
    }
    seen[static_cast<size_t>(id)] = true;

    AbstractiveItem& item = batch.items[static_cast<size_t>(id)];
    item.id = static_cast<int>(id);
    item.summary = summary_it->get<std::string>();
    item.token_count = count_words(item.summary);
    item.length_ok = item.token_count >= static_cast<size_t>(config.min_summary_tokens) &&
                     item.token_count <= static_cast<size_t>(config.max_summary_tokens);
    if (!item.length_ok) {
      ++batch.violations;
      log_warn("summary for id " + std::to_string(id) + " has " +
               std::to_string(item.token_count) + " tokens, outside [" +
               std::to_string(config.min_summary_tokens) + ", " +
               std::to_string(config.max_summary_tokens) + "]");
    }
  }
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw DataError("model returned no summary for id " + std::to_string(i));
  }
  return batch;
}

}  // namespace plsum
