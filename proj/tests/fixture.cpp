#include "fixture.hpp"

#include <sstream>

namespace fixtures {

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::string sentence(const std::vector<std::string>& words) { return join(words) + "."; }

std::string doc(const std::vector<std::string>& sentences) { return join(sentences); }

}  // namespace

plsum::DatasetExample planted_example(int i) {
  const std::string stem = "e" + std::to_string(i);
  const std::string title_a = stem + "ta";
  const std::string title_b = stem + "tb";

  // Six 6-word summary segments.
  std::vector<std::vector<std::string>> segments(6);
  std::vector<std::string> summary_words;
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      segments[j].push_back(stem + "s" + std::to_string(j) + "w" + std::to_string(k));
      summary_words.push_back(segments[j].back());
    }
  }

  int filler_counter = 0;
  auto filler = [&filler_counter] { return "f" + std::to_string(filler_counter++ % 997); };

  auto pad_to_70 = [&](std::vector<std::string> words) {
    while (words.size() < 70) words.push_back(filler());
    return sentence(words);
  };

  const std::string decoy = pad_to_70({title_a, title_a, title_b, title_b});
  std::vector<std::string> rich(6);
  for (int j = 0; j < 6; ++j) {
    std::vector<std::string> words{title_a, title_b};
    words.insert(words.end(), segments[j].begin(), segments[j].end());
    rich[j] = pad_to_70(std::move(words));
  }
  auto filler_sentence = [&] { return pad_to_70({}); };

  std::vector<std::string> doc0{decoy, rich[0], rich[1]};
  while (doc0.size() < 10) doc0.push_back(filler_sentence());
  std::vector<std::string> doc1{rich[2], rich[3]};
  while (doc1.size() < 10) doc1.push_back(filler_sentence());
  std::vector<std::string> doc2{rich[4], rich[5]};
  while (doc2.size() < 10) doc2.push_back(filler_sentence());

  plsum::DatasetExample ex;
  ex.title = title_a + " " + title_b;
  ex.summary = join(summary_words);
  ex.docs = {doc(doc0), doc(doc1), doc(doc2)};
  return ex;
}

std::vector<plsum::DatasetExample> planted_dataset(int n) {
  std::vector<plsum::DatasetExample> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(planted_example(i));
  return out;
}

std::string planted_jsonl(int n) {
  std::ostringstream out;
  plsum::write_examples(out, planted_dataset(n));
  return out.str();
}

plsum::DatasetExample tiny_example() {
  plsum::DatasetExample ex;
  ex.title = "tiny title";
  ex.summary = "w0 w1 w2 w3";
  for (int d = 0; d < 2; ++d) {
    std::vector<std::string> sentences;
    for (int s = 0; s < 5; ++s) {
      const std::string stem = "d" + std::to_string(d) + "s" + std::to_string(s);
      sentences.push_back(sentence({stem + "a", stem + "b", stem + "c", stem + "d", stem + "e"}));
    }
    ex.docs.push_back(doc(sentences));
  }
  return ex;
}

}  // namespace fixtures
