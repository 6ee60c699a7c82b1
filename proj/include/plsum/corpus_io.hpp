#pragma once

#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace plsum {

// One crawled web page, as found in the raw corpus file.
struct CorpusRecord {
  std::string docid;
  std::string url;
  std::string title;
  std::string text;

  bool operator==(const CorpusRecord&) const = default;
};

// One supervised pair: a title, the target summary, and the input documents.
struct DatasetExample {
  std::string title;
  std::string summary;
  std::vector<std::string> docs;

  bool operator==(const DatasetExample&) const = default;
};

// A summary-bearing page from the reference wiki, before documents are
// attached: {"title", "summary"} lines.
struct WikiPage {
  std::string title;
  std::string summary;

  bool operator==(const WikiPage&) const = default;
};

// What to do with a line that fails to parse or lacks a required key.
// Abort raises DataError; Skip logs a warning and moves on.
enum class MalformedLinePolicy { Abort, Skip };

// Streaming JSONL readers. Each next() consumes at most a handful of lines,
// so memory stays independent of file size. Whitespace-only lines are
// ignored. Duplicate docids raise DataError regardless of policy: they mean
// the corpus itself is corrupt, not just one line.
class CorpusReader {
 public:
  explicit CorpusReader(std::istream& in, MalformedLinePolicy policy = MalformedLinePolicy::Abort)
      : in_(&in), policy_(policy) {}

  std::optional<CorpusRecord> next();
  size_t line_number() const { return line_; }
  size_t skipped() const { return skipped_; }

 private:
  std::istream* in_;
  MalformedLinePolicy policy_;
  size_t line_ = 0;
  size_t skipped_ = 0;
  std::unordered_set<std::string> seen_ids_;
};

class ExampleReader {
 public:
  explicit ExampleReader(std::istream& in, MalformedLinePolicy policy = MalformedLinePolicy::Abort)
      : in_(&in), policy_(policy) {}

  std::optional<DatasetExample> next();
  size_t line_number() const { return line_; }
  size_t skipped() const { return skipped_; }

 private:
  std::istream* in_;
  MalformedLinePolicy policy_;
  size_t line_ = 0;
  size_t skipped_ = 0;
};

class WikiReader {
 public:
  explicit WikiReader(std::istream& in, MalformedLinePolicy policy = MalformedLinePolicy::Abort)
      : in_(&in), policy_(policy) {}

  std::optional<WikiPage> next();
  size_t line_number() const { return line_; }
  size_t skipped() const { return skipped_; }

 private:
  std::istream* in_;
  MalformedLinePolicy policy_;
  size_t line_ = 0;
  size_t skipped_ = 0;
};

std::vector<DatasetExample> read_all_examples(std::istream& in,
                                              MalformedLinePolicy policy = MalformedLinePolicy::Abort);

// One compact JSON object per line, UTF-8, field order fixed so identical
// data serializes to identical bytes.
void write_corpus_line(std::ostream& out, const CorpusRecord& rec);
void write_example_line(std::ostream& out, const DatasetExample& ex);
void write_wiki_line(std::ostream& out, const WikiPage& page);
void write_examples(std::ostream& out, const std::vector<DatasetExample>& examples);

// Opens for reading or raises DataError naming the path.
std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace plsum
