#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "plsum/dataset.hpp"
#include "plsum/error.hpp"
#include "plsum/text.hpp"

using namespace plsum;

namespace {

// n distinct words "stem0 stem1 ...", optionally ending with a period.
std::string word_run(const std::string& stem, int n, bool terminal = false) {
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += stem + std::to_string(i);
  }
  if (terminal && !out.empty()) out += '.';
  return out;
}

std::vector<std::string> sorted_titles(const std::vector<DatasetExample>& examples) {
  std::vector<std::string> titles;
  titles.reserve(examples.size());
  for (const auto& ex : examples) titles.push_back(ex.title);
  std::sort(titles.begin(), titles.end());
  return titles;
}

// Summary of 20 distinct words plus a doc sharing exactly `shared` of them,
// padded with fillers to `doc_words` total.
DatasetExample clone_candidate(int shared, int doc_words) {
  DatasetExample ex;
  ex.title = "clone probe";
  ex.summary = word_run("s", 20);
  std::string doc;
  for (int i = 0; i < shared; ++i) {
    if (i) doc += ' ';
    doc += "s" + std::to_string(i);
  }
  for (int i = shared; i < doc_words; ++i) {
    if (i) doc += ' ';
    doc += "w" + std::to_string(i);
  }
  ex.docs = {doc};
  return ex;
}

}  // namespace

TEST_CASE("clone_score is distinct-unigram containment of the summary") {
  CHECK(clone_score(tokenize_words("a b a"), tokenize_words("a b c")) == 2.0 / 3.0);
  CHECK(clone_score(tokenize_words("x y z"), tokenize_words("a b c")) == 0.0);
  CHECK(clone_score(tokenize_words("a b c extra"), tokenize_words("a b c")) == 1.0);
  CHECK(clone_score(tokenize_words("a a a"), tokenize_words("a a")) == 1.0);
  CHECK(clone_score({}, tokenize_words("a")) == 0.0);
  CHECK_THROWS_AS(clone_score(tokenize_words("a"), {}), DataError);
}

TEST_CASE("title_tokens yields distinct normalized tokens in first-seen order") {
  CHECK(title_tokens("O Gato! O Rato") == std::vector<std::string>{"o", "gato", "rato"});
  CHECK(title_tokens("Santos Dumont") == std::vector<std::string>{"santos", "dumont"});
  CHECK_THROWS_WITH_AS(title_tokens("!!!"), doctest::Contains("no word tokens"), DataError);
  CHECK_THROWS_AS(title_tokens(""), DataError);
}

TEST_CASE("match_documents keeps corpus order and stops at max_docs") {
  std::vector<CorpusRecord> corpus{
      {"d0", "u", "t", "O Gato preto corre"},
      {"d1", "u", "t", "gato sem a outra palavra"},
      {"d2", "u", "t", "preto e gato juntos de novo"},
      {"d3", "u", "t", "GATO PRETO em maiusculas"},
      {"d4", "u", "t", "nada relevante"},
  };
  const auto all = match_documents("Gato Preto", corpus, 10);
  REQUIRE(all.size() == 3);
  CHECK(all[0].docid == "d0");
  CHECK(all[1].docid == "d2");
  CHECK(all[2].docid == "d3");

  const auto capped = match_documents("Gato Preto", corpus, 2);
  REQUIRE(capped.size() == 2);
  CHECK(capped[0].docid == "d0");
  CHECK(capped[1].docid == "d2");

  CHECK(match_documents("inexistente", corpus, 10).empty());
}

TEST_CASE("contains_all_tokens requires every token") {
  std::unordered_set<std::string> set{"a", "b", "c"};
  CHECK(contains_all_tokens(set, {"a", "c"}));
  CHECK(contains_all_tokens(set, {}));
  CHECK_FALSE(contains_all_tokens(set, {"a", "z"}));
}

TEST_CASE("apply_filters enforces the 1000-word input floor exactly") {
  FilterConfig config;
  DatasetExample ex;
  ex.title = "floor";
  ex.summary = word_run("s", 20);

  ex.docs = {word_run("w", 999)};
  const auto rejected = apply_filters(ex, config);
  REQUIRE(rejected.rejected.has_value());
  CHECK(*rejected.rejected == RejectReason::TooFewInputWords);
  CHECK_FALSE(rejected.accepted.has_value());

  ex.docs = {word_run("w", 1000)};
  const auto accepted = apply_filters(ex, config);
  REQUIRE(accepted.accepted.has_value());
  CHECK_FALSE(accepted.rejected.has_value());

  // The floor applies to the total across docs.
  ex.docs = {word_run("w", 500), word_run("v", 500)};
  CHECK(apply_filters(ex, config).accepted.has_value());
  ex.docs = {word_run("w", 500), word_run("v", 499)};
  CHECK(apply_filters(ex, config).rejected == RejectReason::TooFewInputWords);
}

TEST_CASE("apply_filters enforces the 20-word summary floor exactly") {
  FilterConfig config;
  DatasetExample ex;
  ex.title = "summary floor";
  ex.docs = {word_run("w", 1200)};

  ex.summary = word_run("s", 19);
  CHECK(apply_filters(ex, config).rejected == RejectReason::SummaryTooShort);

  ex.summary = word_run("s", 20);
  CHECK(apply_filters(ex, config).accepted.has_value());

  // Word count is on normalized tokens, so punctuation does not inflate it.
  ex.summary = word_run("s", 19) + " ...";
  CHECK(apply_filters(ex, config).rejected == RejectReason::SummaryTooShort);
}

TEST_CASE("apply_filters removes clones only above one half") {
  FilterConfig config;

  const auto at_threshold = apply_filters(clone_candidate(10, 1000), config);
  REQUIRE(at_threshold.accepted.has_value());
  CHECK(at_threshold.clones_removed == 0);
  CHECK(at_threshold.accepted->docs.size() == 1);

  const auto above = apply_filters(clone_candidate(11, 2000), config);
  CHECK(above.clones_removed == 1);
  // removing the only doc leaves 0 total words, so the word floor fires first
  CHECK(above.rejected == RejectReason::TooFewInputWords);

  FilterConfig no_word_floor = config;
  no_word_floor.min_total_input_words = 0;
  const auto emptied = apply_filters(clone_candidate(11, 2000), no_word_floor);
  CHECK(emptied.clones_removed == 1);
  CHECK(emptied.rejected == RejectReason::NoMatchingDocs);
}

TEST_CASE("apply_filters order: clones go first, truncation second, floors last") {
  FilterConfig config;

  SUBCASE("clone removal can drop the example below the word floor") {
    DatasetExample ex = clone_candidate(11, 5000);
    ex.docs.push_back(word_run("v", 500));
    const auto outcome = apply_filters(ex, config);
    CHECK(outcome.clones_removed == 1);
    CHECK(outcome.rejected == RejectReason::TooFewInputWords);
  }

  SUBCASE("a removed clone frees a slot under max_docs") {
    DatasetExample ex = clone_candidate(11, 2000);
    for (int d = 0; d < 15; ++d) ex.docs.push_back(word_run("d" + std::to_string(d), 80));
    const auto outcome = apply_filters(ex, config);
    REQUIRE(outcome.accepted.has_value());
    CHECK(outcome.clones_removed == 1);
    REQUIRE(outcome.accepted->docs.size() == 15);
    CHECK(outcome.accepted->docs.front().substr(0, 3) == "d00");
    CHECK(outcome.accepted->docs.back().substr(0, 3) == "d14");
  }

  SUBCASE("beyond max_docs the first docs win") {
    DatasetExample ex;
    ex.title = "cap";
    ex.summary = word_run("s", 20);
    for (int d = 0; d < 18; ++d) ex.docs.push_back(word_run("d" + std::to_string(d), 80));
    const auto outcome = apply_filters(ex, config);
    REQUIRE(outcome.accepted.has_value());
    REQUIRE(outcome.accepted->docs.size() == 15);
    CHECK(outcome.accepted->docs.front().substr(0, 3) == "d00");
    CHECK(outcome.accepted->docs.back().substr(0, 3) == "d14");
  }

  SUBCASE("truncated docs do not count toward the word floor") {
    DatasetExample ex;
    ex.title = "cap floor";
    ex.summary = word_run("s", 20);
    // 15 docs of 60 words is 900, below the floor; doc 16 would lift it.
    for (int d = 0; d < 16; ++d) ex.docs.push_back(word_run("d" + std::to_string(d), 60));
    CHECK(apply_filters(ex, config).rejected == RejectReason::TooFewInputWords);
  }
}

TEST_CASE("apply_filters rejects an example with no docs") {
  DatasetExample ex;
  ex.title = "empty";
  ex.summary = word_run("s", 20);
  // under default floors the zero word total is reported first
  CHECK(apply_filters(ex, FilterConfig{}).rejected == RejectReason::TooFewInputWords);

  FilterConfig no_word_floor;
  no_word_floor.min_total_input_words = 0;
  CHECK(apply_filters(ex, no_word_floor).rejected == RejectReason::NoMatchingDocs);
}

TEST_CASE("split_dataset slices 10 examples as 8/1/1") {
  std::vector<DatasetExample> examples(10);
  for (size_t i = 0; i < examples.size(); ++i) examples[i].title = std::to_string(i);
  const auto before = sorted_titles(examples);

  const auto split = split_dataset(examples, {0.8, 0.1, 0.1}, 7);
  CHECK(split.train.size() == 8);
  CHECK(split.val.size() == 1);
  CHECK(split.test.size() == 1);

  std::vector<DatasetExample> all = split.train;
  all.insert(all.end(), split.val.begin(), split.val.end());
  all.insert(all.end(), split.test.begin(), split.test.end());
  CHECK(sorted_titles(all) == before);
}

TEST_CASE("split_dataset is deterministic per seed") {
  std::vector<DatasetExample> examples(30);
  for (size_t i = 0; i < examples.size(); ++i) examples[i].title = std::to_string(i);

  const auto a = split_dataset(examples, {0.8, 0.1, 0.1}, 3);
  const auto b = split_dataset(examples, {0.8, 0.1, 0.1}, 3);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  CHECK(a.test == b.test);

  const auto c = split_dataset(examples, {0.8, 0.1, 0.1}, 4);
  CHECK(a.train != c.train);  // 30! orderings; a collision would be a bug
}

TEST_CASE("split_dataset rounds halves away from zero and clamps") {
  std::vector<DatasetExample> seven(7);
  const auto s7 = split_dataset(seven, {0.5, 0.25, 0.25}, 0);
  CHECK(s7.train.size() == 4);  // round(3.5)
  CHECK(s7.val.size() == 2);    // round(1.75)
  CHECK(s7.test.size() == 1);

  std::vector<DatasetExample> five(5);
  const auto s5 = split_dataset(five, {0.9, 0.1, 0.0}, 0);
  CHECK(s5.train.size() == 5);  // round(4.5), leaving nothing
  CHECK(s5.val.size() == 0);
  CHECK(s5.test.size() == 0);
}

TEST_CASE("split_dataset validates ratios and size") {
  std::vector<DatasetExample> examples(10);
  CHECK_THROWS_AS(split_dataset(examples, {0.5, 0.2, 0.2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset(examples, {1.2, -0.1, -0.1}, 0), std::invalid_argument);
  std::vector<DatasetExample> two(2);
  CHECK_THROWS_AS(split_dataset(two, {0.8, 0.1, 0.1}, 0), DataError);
}

TEST_CASE("compute_stats reports nearest-rank percentiles") {
  std::vector<DatasetExample> examples;
  for (int words : {30, 10, 50, 20, 40}) {  // deliberately unsorted
    DatasetExample ex;
    ex.title = "t";
    ex.summary = word_run("s", words / 10);
    ex.docs = {word_run("w", words)};
    examples.push_back(ex);
  }
  const auto stats = compute_stats(examples);
  CHECK(stats.n_examples == 5);
  CHECK(stats.input_size_words == std::array<long long, 5>{10, 20, 30, 40, 50});
  CHECK(stats.output_size_words == std::array<long long, 5>{1, 2, 3, 4, 5});
  CHECK(stats.n_documents == std::array<int, 5>{1, 1, 1, 1, 1});

  CHECK_THROWS_AS(compute_stats({}), DataError);

  const auto single = compute_stats({examples[0]});
  CHECK(single.input_size_words == std::array<long long, 5>{30, 30, 30, 30, 30});
}

TEST_CASE("stats render as JSON and aligned text") {
  std::vector<DatasetExample> examples(3);
  for (auto& ex : examples) {
    ex.summary = "uma frase de resumo";
    ex.docs = {"um documento de entrada aqui"};
  }
  const auto stats = compute_stats(examples);

  const auto doc = nlohmann::json::parse(stats_to_json(stats));
  CHECK(doc["n_examples"] == 3);
  CHECK(doc["percentiles"] == nlohmann::json({20, 40, 60, 80, 100}));
  CHECK(doc["input_size_words"].size() == 5);
  CHECK(doc["output_size_words"].size() == 5);
  CHECK(doc["n_documents"].size() == 5);
  CHECK(stats_to_json(stats).rfind("{\"n_examples\"", 0) == 0);

  const auto text = stats_to_text(stats);
  CHECK(text.find("examples: 3") != std::string::npos);
  CHECK(text.find("percentile") != std::string::npos);
  CHECK(text.find("input_words") != std::string::npos);
  CHECK(text.find("100") != std::string::npos);
}

TEST_CASE("build_dataset attaches docs first-come and filters in wiki order") {
  FilterConfig config;
  config.min_total_input_words = 4;
  config.min_summary_words = 2;
  config.max_docs = 2;

  std::istringstream corpus(
      R"({"docid": "c1", "url": "u", "title": "x", "text": "alpha beta um dois tres"})"
      "\n"
      R"({"docid": "c2", "url": "u", "title": "x", "text": "alpha beta quatro cinco"})"
      "\n"
      R"({"docid": "c3", "url": "u", "title": "x", "text": "alpha beta seis sete"})"
      "\n"
      R"({"docid": "c4", "url": "u", "title": "x", "text": "gamma delta oito nove"})"
      "\n");
  std::istringstream wiki(
      R"({"title": "Alpha Beta", "summary": "resumo com duas palavras"})"
      "\n"
      R"({"title": "Sem Par", "summary": "não casa com nada"})"
      "\n"
      R"({"title": "Gamma Delta", "summary": "x"})"
      "\n");
  std::ostringstream out;

  const auto report = build_dataset(corpus, wiki, out, config);
  CHECK(report.wiki_pages == 3);
  CHECK(report.corpus_records == 4);
  CHECK(report.accepted == 1);
  CHECK(report.rejected_no_matching_docs == 1);
  CHECK(report.rejected_summary_too_short == 1);
  CHECK(report.empty_titles_skipped == 0);

  std::istringstream back(out.str());
  const auto examples = read_all_examples(back);
  REQUIRE(examples.size() == 1);
  CHECK(examples[0].title == "Alpha Beta");
  // max_docs = 2: the first two matching records, in corpus order.
  REQUIRE(examples[0].docs.size() == 2);
  CHECK(examples[0].docs[0] == "alpha beta um dois tres");
  CHECK(examples[0].docs[1] == "alpha beta quatro cinco");
}

TEST_CASE("build_dataset handles empty titles per policy") {
  const std::string wiki_data =
      R"({"title": "...", "summary": "pontuacao apenas"})"
      "\n"
      R"({"title": "Ok Title", "summary": "dois tokens aqui agora"})"
      "\n";
  const std::string corpus_data =
      R"({"docid": "c1", "url": "u", "title": "x", "text": "ok title com palavras bastantes"})"
      "\n";
  FilterConfig config;
  config.min_total_input_words = 1;
  config.min_summary_words = 1;

  {
    std::istringstream corpus(corpus_data), wiki(wiki_data);
    std::ostringstream out;
    CHECK_THROWS_WITH_AS(build_dataset(corpus, wiki, out, config),
                         doctest::Contains("wiki line 1"), DataError);
  }
  {
    std::istringstream corpus(corpus_data), wiki(wiki_data);
    std::ostringstream out;
    const auto report =
        build_dataset(corpus, wiki, out, config, MalformedLinePolicy::Skip);
    CHECK(report.empty_titles_skipped == 1);
    CHECK(report.accepted == 1);
  }
}

TEST_CASE("build_dataset counts removed clones") {
  // The single matching doc contains the full summary vocabulary.
  std::istringstream corpus(
      R"({"docid": "c1", "url": "u", "title": "x", "text": "tema unico resumo inteiro copiado aqui dentro"})"
      "\n");
  std::istringstream wiki(
      R"({"title": "Tema Unico", "summary": "resumo inteiro copiado"})"
      "\n");
  std::ostringstream out;
  FilterConfig config;
  // zero the word floor so the emptied doc list is what gets reported
  config.min_total_input_words = 0;
  config.min_summary_words = 1;

  const auto report = build_dataset(corpus, wiki, out, config);
  CHECK(report.accepted == 0);
  CHECK(report.clone_docs_removed == 1);
  CHECK(report.rejected_no_matching_docs == 1);
  CHECK(out.str().empty());
}

TEST_CASE("build_dataset output does not depend on the job count") {
  std::ostringstream corpus_data, wiki_data;
  for (int i = 0; i < 40; ++i) {
    CorpusRecord rec;
    rec.docid = "d" + std::to_string(i);
    rec.url = "u";
    rec.title = "t";
    rec.text = "topic" + std::to_string(i % 8) + " corpo do documento numero " +
               std::to_string(i);
    write_corpus_line(corpus_data, rec);
  }
  for (int t = 0; t < 8; ++t) {
    write_wiki_line(wiki_data, {"Topic" + std::to_string(t),
                                "resumo do topico numero " + std::to_string(t)});
  }
  FilterConfig config;
  config.min_total_input_words = 2;
  config.min_summary_words = 2;

  std::string outputs[2];
  BuildReport reports[2];
  const int jobs[2] = {1, 3};
  for (int k = 0; k < 2; ++k) {
    std::istringstream corpus(corpus_data.str()), wiki(wiki_data.str());
    std::ostringstream out;
    reports[k] = build_dataset(corpus, wiki, out, config, MalformedLinePolicy::Abort, jobs[k]);
    outputs[k] = out.str();
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(reports[0].accepted == reports[1].accepted);
  CHECK(reports[0].accepted == 8);
}
