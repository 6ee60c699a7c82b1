#pragma once

#include <string>
#include <vector>

#include "plsum/corpus_io.hpp"

namespace fixtures {

// A synthetic example with a fully worked-out score geometry, built from
// vocabulary namespaced by `i` so examples never interact.
//
// Shape: the title has two words; the summary is 36 words in six 6-word
// segments; the three docs hold 30 sentences of exactly 70 words each, which
// map one-to-one onto sentence units at the default 100-word target.
//
//   - one "decoy" sentence (doc 0, sentence 0) carries each title word twice
//     and no summary words: the highest TF-IDF score, zero bigram value;
//   - six "rich" sentences each carry the title words once and one complete
//     summary segment: docs 0/0/1/1/2/2 at sentences 1,2,0,1,0,1;
//   - 23 filler sentences share no vocabulary with title or summary.
//
// Consequences, exact by construction:
//   - title-word document frequency is 7 of 30 units, so TF-IDF ranks
//     decoy > rich (6-way tie, broken positionally) > filler;
//   - TF-IDF at L=5 picks the decoy plus rich 0-3: bigram recall 20/35;
//   - the bigram oracle at L=5 picks rich 0-4: recall 25/35;
//   - recall over L = 0,2,...  runs 0, 5/35, 15/35, 25/35, then 30/35
//     from L=8 on (the five cross-segment bigrams are never coverable);
//   - each doc is 700 raw words, each doc shares 12 of the 36 distinct
//     summary words (clone score 1/3), so default filters accept it.
plsum::DatasetExample planted_example(int i);

std::vector<plsum::DatasetExample> planted_dataset(int n);

// planted_dataset serialized as dataset JSONL.
std::string planted_jsonl(int n);

// Two docs of five 5-word sentences each, every word unique to its sentence,
// title and summary disjoint from all of them. At target_words = 5 this
// yields ten units, one per sentence, with all TF-IDF scores zero: neutral
// material for draw-order and tie-break tests.
plsum::DatasetExample tiny_example();

}  // namespace fixtures
