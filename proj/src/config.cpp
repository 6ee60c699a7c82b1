#include "plsum/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plsum/corpus_io.hpp"
#include "plsum/error.hpp"

namespace plsum {

namespace {

using nlohmann::json;

template <typename T>
T typed(const json& value, const char* key, const std::string& origin) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw DataError(origin + ": bad value for key " + key);
  }
}

}  // namespace

void apply_config_text(PipelineConfig& config, const std::string& json_text,
                       const std::string& origin) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw DataError(origin + ": not a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "max_docs") config.filters.max_docs = typed<int>(value, "max_docs", origin);
    else if (key == "min_input_words")
      config.filters.min_total_input_words = typed<int>(value, "min_input_words", origin);
    else if (key == "min_summary_words")
      config.filters.min_summary_words = typed<int>(value, "min_summary_words", origin);
    else if (key == "clone_threshold")
      config.filters.clone_threshold = typed<double>(value, "clone_threshold", origin);
    else if (key == "L") config.L = typed<int>(value, "L", origin);
    else if (key == "seed") config.seed = typed<uint64_t>(value, "seed", origin);
    else if (key == "n_resamples") config.n_resamples = typed<int>(value, "n_resamples", origin);
    else if (key == "lo_pct") config.lo_pct = typed<double>(value, "lo_pct", origin);
    else if (key == "hi_pct") config.hi_pct = typed<double>(value, "hi_pct", origin);
    else if (key == "target_words") config.target_words = typed<int>(value, "target_words", origin);
    else if (key == "J")
      config.abstractive.max_input_tokens = typed<int>(value, "J", origin);
    else if (key == "k_max")
      config.abstractive.max_summary_tokens = typed<int>(value, "k_max", origin);
    else if (key == "k_min")
      config.abstractive.min_summary_tokens = typed<int>(value, "k_min", origin);
    else if (key == "command")
      config.abstractive.command = typed<std::string>(value, "command", origin);
    else if (key == "jobs") config.jobs = typed<int>(value, "jobs", origin);
    else throw DataError(origin + ": unknown config key " + key);
  }
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream text;
  text << in.rdbuf();
  PipelineConfig config;
  apply_config_text(config, text.str(), path);
  return config;
}

}  // namespace plsum
