#include "plsum/text.hpp"

#include <cstdint>
#include <stdexcept>

namespace plsum {

namespace {

bool is_ascii_ws(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// U+00A0 (NBSP) shows up constantly in web text; treat it as whitespace.
bool is_nbsp(std::string_view s, size_t i) {
  return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xC2 &&
         static_cast<unsigned char>(s[i + 1]) == 0xA0;
}

bool is_ascii_punct(unsigned char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

// Common typographic punctuation that web text attaches to word edges.
// Returns the byte length of the mark at position i, or 0.
size_t multibyte_punct_len(std::string_view s, size_t i) {
  const auto b = [&](size_t k) { return static_cast<unsigned char>(s[i + k]); };
  if (i + 1 < s.size() && b(0) == 0xC2) {
    const unsigned char c = b(1);
    if (c == 0xAB || c == 0xBB || c == 0xA1 || c == 0xBF) return 2;  // « » ¡ ¿
  }
  if (i + 2 < s.size() && b(0) == 0xE2 && b(1) == 0x80) {
    const unsigned char c = b(2);
    // quotes, dashes, ellipsis
    if (c == 0x98 || c == 0x99 || c == 0x9C || c == 0x9D || c == 0x93 || c == 0x94 || c == 0xA6)
      return 3;
  }
  return 0;
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Strips punctuation from both edges of a whitespace-free field.
std::string_view strip_edges(std::string_view field) {
  size_t begin = 0;
  while (begin < field.size()) {
    if (is_ascii_punct(static_cast<unsigned char>(field[begin]))) {
      ++begin;
      continue;
    }
    if (const size_t len = multibyte_punct_len(field, begin)) {
      begin += len;
      continue;
    }
    break;
  }
  size_t end = field.size();
  while (end > begin) {
    const unsigned char last = static_cast<unsigned char>(field[end - 1]);
    if (is_ascii_punct(last)) {
      --end;
      continue;
    }
    // Multibyte marks end in bytes >= 0x80; re-scan from the left edge of a
    // candidate sequence (2 or 3 bytes) to avoid decoding backwards.
    bool stripped = false;
    for (size_t len = 2; len <= 3 && !stripped; ++len) {
      if (end - begin >= len && multibyte_punct_len(field.substr(0, end), end - len) == len) {
        end -= len;
        stripped = true;
      }
    }
    if (!stripped) break;
  }
  return field.substr(begin, end - begin);
}

// A field closes a sentence when a terminal mark is followed only by
// punctuation to the end of the field ("fim.", "fim!?", "fim.»").
bool field_ends_sentence(std::string_view field) {
  size_t last = std::string_view::npos;
  for (size_t i = 0; i < field.size(); ++i) {
    if (is_terminal(field[i])) last = i;
  }
  if (last == std::string_view::npos) return false;
  size_t i = last + 1;
  while (i < field.size()) {
    if (is_ascii_punct(static_cast<unsigned char>(field[i]))) {
      ++i;
      continue;
    }
    if (const size_t len = multibyte_punct_len(field, i)) {
      i += len;
      continue;
    }
    return false;
  }
  return true;
}

template <typename FieldFn>
void for_each_field(std::string_view text, FieldFn&& fn) {
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n) {
      if (is_ascii_ws(static_cast<unsigned char>(text[i]))) {
        ++i;
      } else if (is_nbsp(text, i)) {
        i += 2;
      } else {
        break;
      }
    }
    const size_t start = i;
    while (i < n && !is_ascii_ws(static_cast<unsigned char>(text[i])) && !is_nbsp(text, i)) ++i;
    if (i > start) fn(text.substr(start, i - start));
  }
}

}  // namespace

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_ascii_ws(c)) {
      pending_space = !out.empty();
      ++i;
      continue;
    }
    if (is_nbsp(text, i)) {
      pending_space = !out.empty();
      i += 2;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c + 32));
      ++i;
      continue;
    }
    // Latin-1 supplement uppercase (À..Þ except ×) sits at 0xC3 0x80..0x9E.
    if (c == 0xC3 && i + 1 < text.size()) {
      const unsigned char c2 = static_cast<unsigned char>(text[i + 1]);
      if (c2 >= 0x80 && c2 <= 0x9E && c2 != 0x97) {
        out.push_back(static_cast<char>(0xC3));
        out.push_back(static_cast<char>(c2 + 0x20));
        i += 2;
        continue;
      }
    }
    out.push_back(static_cast<char>(c));
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  for_each_field(text, [&](std::string_view field) {
    const std::string_view token = strip_edges(field);
    if (!token.empty()) tokens.emplace_back(token);
  });
  return tokens;
}

size_t count_words(std::string_view text) {
  size_t n = 0;
  for_each_field(text, [&](std::string_view field) {
    if (!strip_edges(field).empty()) ++n;
  });
  return n;
}

std::vector<SentenceUnit> split_sentences(std::string_view text, int target_words,
                                          int doc_index) {
  if (target_words < 1) throw std::invalid_argument("split_sentences: target_words must be >= 1");

  struct RawSentence {
    std::string text;
    int word_count = 0;
  };
  std::vector<RawSentence> raw;
  RawSentence cur;
  for_each_field(text, [&](std::string_view field) {
    if (!cur.text.empty()) cur.text.push_back(' ');
    cur.text.append(field);
    if (!strip_edges(field).empty()) ++cur.word_count;
    if (field_ends_sentence(field)) {
      raw.push_back(std::move(cur));
      cur = RawSentence{};
    }
  });
  if (!cur.text.empty()) raw.push_back(std::move(cur));

  // Wordless runs of punctuation belong with an adjacent sentence.
  std::vector<RawSentence> merged;
  std::string pending;  // punctuation before the first worded sentence
  for (auto& rs : raw) {
    if (rs.word_count == 0) {
      if (!merged.empty()) {
        merged.back().text.push_back(' ');
        merged.back().text.append(rs.text);
      } else {
        if (!pending.empty()) pending.push_back(' ');
        pending.append(rs.text);
      }
    } else {
      if (!pending.empty()) {
        pending.push_back(' ');
        pending.append(rs.text);
        rs.text = std::move(pending);
        pending.clear();
      }
      merged.push_back(std::move(rs));
    }
  }
  if (merged.empty()) return {};

  // Close the unit when adding the next sentence would exceed 1.2x the
  // target and the unit already holds at least half of it. Scaled-integer
  // comparisons keep the thresholds exact.
  std::vector<SentenceUnit> units;
  SentenceUnit unit;
  unit.doc_index = doc_index;
  for (auto& rs : merged) {
    if (unit.word_count > 0 &&
        10LL * (unit.word_count + rs.word_count) > 12LL * target_words &&
        2LL * unit.word_count >= target_words) {
      unit.sent_index = static_cast<int>(units.size());
      units.push_back(std::move(unit));
      unit = SentenceUnit{};
      unit.doc_index = doc_index;
    }
    if (!unit.text.empty()) unit.text.push_back(' ');
    unit.text.append(rs.text);
    unit.word_count += rs.word_count;
  }
  if (unit.word_count > 0) {
    unit.sent_index = static_cast<int>(units.size());
    units.push_back(std::move(unit));
  }
  return units;
}

int NgramBag::total() const {
  int sum = 0;
  for (const auto& [key, count] : counts) sum += count;
  return sum;
}

std::string ngram_key(const std::string* first, int n) {
  std::string key;
  for (int i = 0; i < n; ++i) {
    if (i) key.push_back('\x1f');
    key.append(first[i]);
  }
  return key;
}

std::vector<std::string> ngram_key_tokens(const std::string& key) {
  std::vector<std::string> tokens;
  size_t start = 0;
  for (;;) {
    const size_t sep = key.find('\x1f', start);
    if (sep == std::string::npos) {
      tokens.push_back(key.substr(start));
      return tokens;
    }
    tokens.push_back(key.substr(start, sep - start));
    start = sep + 1;
  }
}

NgramBag ngrams(const std::vector<std::string>& tokens, int n) {
  if (n < 1) throw std::invalid_argument("ngrams: n must be >= 1");
  NgramBag bag;
  bag.n = n;
  if (tokens.size() < static_cast<size_t>(n)) return bag;
  const size_t windows = tokens.size() - static_cast<size_t>(n) + 1;
  bag.counts.reserve(windows);
  for (size_t i = 0; i < windows; ++i) {
    ++bag.counts[ngram_key(&tokens[i], n)];
  }
  return bag;
}

}  // namespace plsum
