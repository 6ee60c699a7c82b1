#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plsum/corpus_io.hpp"
#include "plsum/eval.hpp"
#include "plsum/extractive.hpp"
#include "plsum/parallel.hpp"
#include "plsum/rng.hpp"

using namespace plsum;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string synth_text(Rng& rng, int words, int title_every, const std::string& t0,
                       const std::string& t1) {
  std::string text;
  for (int w = 0; w < words; ++w) {
    if (title_every > 0 && w % title_every == 0) text += (w % (2 * title_every) == 0 ? t0 : t1);
    else text += "w" + std::to_string(rng.next_below(5000));
    text += (w % 14 == 13) ? ". " : " ";
  }
  return text;
}

std::vector<DatasetExample> synth_dataset(size_t n_examples, int docs, int words_per_doc) {
  Rng rng(42);
  std::vector<DatasetExample> examples;
  examples.reserve(n_examples);
  for (size_t i = 0; i < n_examples; ++i) {
    DatasetExample ex;
    const std::string t0 = "t" + std::to_string(i) + "a";
    const std::string t1 = "t" + std::to_string(i) + "b";
    ex.title = t0 + " " + t1;
    std::string summary;
    for (int w = 0; w < 40; ++w) summary += "w" + std::to_string(rng.next_below(5000)) + " ";
    ex.summary = summary;
    for (int d = 0; d < docs; ++d) ex.docs.push_back(synth_text(rng, words_per_doc, 9, t0, t1));
    examples.push_back(std::move(ex));
  }
  return examples;
}

void report(const std::string& name, double serial_s, double parallel_s, bool match) {
  std::cout << std::left << std::setw(14) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(10) << serial_s << " s" << std::setw(10)
            << parallel_s << " s" << std::setw(9) << std::setprecision(2)
            << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "x   "
            << (match ? "outputs match" : "OUTPUTS DIFFER") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel timings for the extract, scoring, and bootstrap kernels"};
  size_t n_examples = 200;
  int docs = 5, words_per_doc = 1500, n_resamples = 2000, n_values = 20000, jobs = 0;
  app.add_option("--examples", n_examples, "synthetic examples");
  app.add_option("--docs", docs, "documents per example");
  app.add_option("--words-per-doc", words_per_doc, "words per document");
  app.add_option("--resamples", n_resamples, "bootstrap resamples");
  app.add_option("--values", n_values, "bootstrap input size");
  app.add_option("--jobs", jobs, "threads for the parallel side (0 = all)");
  CLI11_PARSE(app, argc, argv);

  std::cout << "threads available: " << effective_jobs(0) << ", using "
            << effective_jobs(jobs) << "\n\n";
  std::cout << std::left << std::setw(14) << "kernel" << std::right << std::setw(12) << "serial"
            << std::setw(12) << "parallel" << std::setw(10) << "speedup" << "\n";

  const auto examples = synth_dataset(n_examples, docs, words_per_doc);
  {
    std::ostringstream dataset_text;
    write_examples(dataset_text, examples);
    ExtractOptions options;
    options.jobs = jobs;

    std::istringstream in_serial(dataset_text.str());
    std::ostringstream out_serial;
    auto start = std::chrono::steady_clock::now();
    extract_stream_serial(in_serial, out_serial, options);
    const double serial_s = seconds_since(start);

    std::istringstream in_parallel(dataset_text.str());
    std::ostringstream out_parallel;
    start = std::chrono::steady_clock::now();
    extract_stream(in_parallel, out_parallel, options);
    const double parallel_s = seconds_since(start);
    report("extract", serial_s, parallel_s, out_serial.str() == out_parallel.str());
  }
  {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(examples.size());
    for (const auto& ex : examples) {
      pairs.emplace_back(ex.docs[0].substr(0, 2000), ex.summary);
    }
    auto start = std::chrono::steady_clock::now();
    const CorpusScore serial = score_corpus_serial(pairs);
    const double serial_s = seconds_since(start);
    start = std::chrono::steady_clock::now();
    const CorpusScore parallel = score_corpus(pairs, jobs);
    const double parallel_s = seconds_since(start);
    const bool match = serial.mean.r1.f1 == parallel.mean.r1.f1 &&
                       serial.mean.r2.f1 == parallel.mean.r2.f1 &&
                       serial.mean.rl.f1 == parallel.mean.rl.f1;
    report("rouge", serial_s, parallel_s, match);
  }
  {
    Rng rng(7);
    std::vector<double> values(static_cast<size_t>(n_values));
    for (auto& v : values) v = static_cast<double>(rng.next_below(10000)) / 10000.0;
    auto start = std::chrono::steady_clock::now();
    const BootstrapCI serial = bootstrap_ci_serial(values, n_resamples, 2.5, 97.5, 0);
    const double serial_s = seconds_since(start);
    start = std::chrono::steady_clock::now();
    const BootstrapCI parallel = bootstrap_ci(values, n_resamples, 2.5, 97.5, 0, jobs);
    const double parallel_s = seconds_since(start);
    const bool match = serial.lo == parallel.lo && serial.mean == parallel.mean &&
                       serial.hi == parallel.hi;
    report("bootstrap", serial_s, parallel_s, match);
  }
  return 0;
}
