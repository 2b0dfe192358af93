#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "toklab/bpe.hpp"
#include "toklab/corpus.hpp"
#include "toklab/metrics.hpp"
#include "toklab/model.hpp"
#include "toklab/rng.hpp"
#include "toklab/variants.hpp"

using namespace toklab;

namespace {

// Synthetic corpus with a skewed-ish word distribution: plenty of repeated
// short words plus a long tail of random ones.
Corpus make_corpus(std::size_t lines) {
  SplitMix64 rng(4242);
  const std::string chars = "abcdefghij";
  std::vector<std::string> tail;
  for (int i = 0; i < 400; ++i) {
    std::string w;
    const std::size_t len = 2 + rng.below(11);
    for (std::size_t j = 0; j < len; ++j) w += chars[rng.below(chars.size())];
    tail.push_back(w);
  }
  const std::vector<std::string> head = {"the", "be", "of", "and", "ha",
                                         "in", "he", "it", "that"};
  std::vector<std::string> text(lines);
  for (std::string& line : text) {
    const std::size_t words = 4 + rng.below(9);
    for (std::size_t j = 0; j < words; ++j) {
      if (!line.empty()) line += ' ';
      line += rng.below(10) < 6 ? head[rng.below(head.size())]
                                : tail[rng.below(tail.size())];
    }
  }
  return corpus_from_lines(text);
}

const Corpus& bench_corpus() {
  static const Corpus c = make_corpus(3000);
  return c;
}

const Tokenizer& bench_tokenizer() {
  static const Tokenizer t = train_bpe(bench_corpus(), 800);
  return t;
}

void BM_train(benchmark::State& state) {
  const Corpus& corpus = bench_corpus();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        train_bpe(corpus, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_train)->Arg(100)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_tokenize_word(benchmark::State& state) {
  const Tokenizer& t = bench_tokenizer();
  SplitMix64 rng(7);
  const std::string chars = "abcdefghij";
  std::string word;
  for (int i = 0; i < state.range(0); ++i) {
    word += chars[rng.below(chars.size())];
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.tokenize(word));
  }
}
BENCHMARK(BM_tokenize_word)->Arg(8)->Arg(32)->Arg(128);

void BM_tokenize_corpus(benchmark::State& state) {
  const Tokenizer& t = bench_tokenizer();
  const Corpus& corpus = bench_corpus();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tokenize_corpus(
        t, corpus, OovPolicy::kReject,
        static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_tokenize_corpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_duplication_corpus(benchmark::State& state) {
  const Tokenizer& t = bench_tokenizer();
  const Corpus& corpus = bench_corpus();
  const TokenizedCorpus base = tokenize_corpus(t, corpus);
  const DuplicationSpec spec = select_duplication_set(base, 40, 3, 1);
  const TokenizerModel model{t, spec};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tokenize_corpus(
        model, corpus, OovPolicy::kReject,
        static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_duplication_corpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_renyi_entropy(benchmark::State& state) {
  SplitMix64 rng(99);
  std::unordered_map<std::string, std::int64_t> counts;
  for (int i = 0; i < state.range(0); ++i) {
    counts["t" + std::to_string(i)] =
        1 + static_cast<std::int64_t>(rng.below(5000));
  }
  const UnigramDistribution dist = distribution_from_counts(counts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(renyi_entropy(dist.prob_vector(), 3.0));
  }
}
BENCHMARK(BM_renyi_entropy)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
