#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace plsum {

// One extraction unit of roughly target_words words, addressed by the doc
// and sentence it came from.
struct SentenceUnit {
  int doc_index = 0;
  int sent_index = 0;
  std::string text;
  int word_count = 0;

  bool operator==(const SentenceUnit&) const = default;
};

// Lowercases (ASCII + Latin-1 supplement, which covers Portuguese accents),
// collapses whitespace runs to single spaces and trims the ends. Accents are
// preserved; U+00A0 counts as whitespace. Idempotent.
std::string normalize(std::string_view text);

// Splits on whitespace and strips punctuation from token edges (ASCII
// punctuation plus common typographic marks). Tokens that become empty are
// dropped; interior punctuation is kept, so "3.14" stays one token.
std::vector<std::string> tokenize_words(std::string_view text);

// Token count of tokenize_words(text) without materializing the tokens.
size_t count_words(std::string_view text);

// Splits normalized text at terminal punctuation ('.', '!', '?' closing a
// whitespace-delimited field), then greedily merges consecutive raw sentences
// into ~target_words units: a unit closes once adding the next sentence would
// push it past 1.2 * target_words and it already holds at least half the
// target. Splits only at existing token boundaries, so concatenating the unit
// texts preserves the token stream of the input exactly.
std::vector<SentenceUnit> split_sentences(std::string_view text, int target_words = 100,
                                          int doc_index = 0);

// Multiset of n-grams. Keys are the n tokens joined by '\x1f'.
struct NgramBag {
  int n = 1;
  std::unordered_map<std::string, int> counts;

  int total() const;
};

NgramBag ngrams(const std::vector<std::string>& tokens, int n);

// Key helpers for NgramBag; key_tokens inverts ngram_key.
std::string ngram_key(const std::string* first, int n);
std::vector<std::string> ngram_key_tokens(const std::string& key);

}  // namespace plsum
