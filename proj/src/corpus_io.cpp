#include "plsum/corpus_io.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "plsum/diag.hpp"
#include "plsum/error.hpp"

namespace plsum {

namespace {

using nlohmann::json;

bool whitespace_only(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Pulls the next parseable JSON object off the stream. Returns nullopt at
// end of input. Malformed lines follow the reader's policy.
std::optional<json> next_object(std::istream& in, const char* what, MalformedLinePolicy policy,
                                size_t& line, size_t& skipped) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    if (whitespace_only(raw)) continue;
    json obj = json::parse(raw, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      const std::string msg =
          std::string(what) + " line " + std::to_string(line) + ": not a JSON object";
      if (policy == MalformedLinePolicy::Abort) throw DataError(msg);
      log_warn(msg + " (skipped)");
      ++skipped;
      continue;
    }
    return obj;
  }
  return std::nullopt;
}

// Fetches a required field; a missing or mistyped key counts as a malformed
// line and follows the same policy. Returns false when the line was skipped.
bool get_string(const json& obj, const char* key, std::string& out, const char* what,
                MalformedLinePolicy policy, size_t line, size_t& skipped) {
  const auto it = obj.find(key);
  std::string msg;
  if (it == obj.end()) {
    msg = std::string(what) + " line " + std::to_string(line) + ": missing key " + key;
  } else if (!it->is_string()) {
    msg = std::string(what) + " line " + std::to_string(line) + ": key " + key +
          " must be a string";
  } else {
    out = it->get<std::string>();
    return true;
  }
  if (policy == MalformedLinePolicy::Abort) throw DataError(msg);
  log_warn(msg + " (skipped)");
  ++skipped;
  return false;
}

bool get_string_array(const json& obj, const char* key, std::vector<std::string>& out,
                      const char* what, MalformedLinePolicy policy, size_t line,
                      size_t& skipped) {
  const auto it = obj.find(key);
  std::string msg;
  if (it == obj.end()) {
    msg = std::string(what) + " line " + std::to_string(line) + ": missing key " + key;
  } else if (!it->is_array()) {
    msg = std::string(what) + " line " + std::to_string(line) + ": key " + key +
          " must be an array of strings";
  } else {
    out.clear();
    out.reserve(it->size());
    bool ok = true;
    for (const auto& elem : *it) {
      if (!elem.is_string()) {
        ok = false;
        break;
      }
      out.push_back(elem.get<std::string>());
    }
    if (ok) return true;
    msg = std::string(what) + " line " + std::to_string(line) + ": key " + key +
          " must be an array of strings";
  }
  if (policy == MalformedLinePolicy::Abort) throw DataError(msg);
  log_warn(msg + " (skipped)");
  ++skipped;
  return false;
}

json quoted(const std::string& s) { return json(s); }

}  // namespace

std::optional<CorpusRecord> CorpusReader::next() {
  while (auto obj = next_object(*in_, "corpus", policy_, line_, skipped_)) {
    CorpusRecord rec;
    if (!get_string(*obj, "docid", rec.docid, "corpus", policy_, line_, skipped_)) continue;
    if (!get_string(*obj, "url", rec.url, "corpus", policy_, line_, skipped_)) continue;
    if (!get_string(*obj, "title", rec.title, "corpus", policy_, line_, skipped_)) continue;
    if (!get_string(*obj, "text", rec.text, "corpus", policy_, line_, skipped_)) continue;
    if (rec.docid.empty()) {
      const std::string msg = "corpus line " + std::to_string(line_) + ": empty docid";
      if (policy_ == MalformedLinePolicy::Abort) throw DataError(msg);
      log_warn(msg + " (skipped)");
      ++skipped_;
      continue;
    }
    if (!seen_ids_.insert(rec.docid).second) {
      throw DataError("corpus line " + std::to_string(line_) + ": duplicate docid " + rec.docid);
    }
    return rec;
  }
  return std::nullopt;
}

std::optional<DatasetExample> ExampleReader::next() {
  while (auto obj = next_object(*in_, "dataset", policy_, line_, skipped_)) {
    DatasetExample ex;
    if (!get_string(*obj, "title", ex.title, "dataset", policy_, line_, skipped_)) continue;
    if (!get_string(*obj, "summary", ex.summary, "dataset", policy_, line_, skipped_)) continue;
    if (!get_string_array(*obj, "docs", ex.docs, "dataset", policy_, line_, skipped_)) continue;
    return ex;
  }
  return std::nullopt;
}

std::optional<WikiPage> WikiReader::next() {
  while (auto obj = next_object(*in_, "wiki", policy_, line_, skipped_)) {
    WikiPage page;
    if (!get_string(*obj, "title", page.title, "wiki", policy_, line_, skipped_)) continue;
    if (!get_string(*obj, "summary", page.summary, "wiki", policy_, line_, skipped_)) continue;
    return page;
  }
  return std::nullopt;
}

std::vector<DatasetExample> read_all_examples(std::istream& in, MalformedLinePolicy policy) {
  ExampleReader reader(in, policy);
  std::vector<DatasetExample> out;
  while (auto ex = reader.next()) out.push_back(std::move(*ex));
  return out;
}

void write_corpus_line(std::ostream& out, const CorpusRecord& rec) {
  out << "{\"docid\": " << quoted(rec.docid).dump() << ", \"url\": " << quoted(rec.url).dump()
      << ", \"title\": " << quoted(rec.title).dump() << ", \"text\": " << quoted(rec.text).dump()
      << "}\n";
}

void write_example_line(std::ostream& out, const DatasetExample& ex) {
  out << "{\"title\": " << quoted(ex.title).dump() << ", \"summary\": " << quoted(ex.summary).dump()
      << ", \"docs\": [";
  for (size_t i = 0; i < ex.docs.size(); ++i) {
    if (i) out << ", ";
    out << quoted(ex.docs[i]).dump();
  }
  out << "]}\n";
}

void write_wiki_line(std::ostream& out, const WikiPage& page) {
  out << "{\"title\": " << quoted(page.title).dump()
      << ", \"summary\": " << quoted(page.summary).dump() << "}\n";
}

void write_examples(std::ostream& out, const std::vector<DatasetExample>& examples) {
  for (const auto& ex : examples) write_example_line(out, ex);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file: " + path);
  return out;
}

}  // namespace plsum
