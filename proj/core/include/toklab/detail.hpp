#ifndef TOKLAB_DETAIL_HPP
#define TOKLAB_DETAIL_HPP

// Internals shared between the plain-tokenizer and variant corpus drivers.
// Not part of the stable surface.

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "toklab/bpe.hpp"
#include "toklab/corpus.hpp"

namespace toklab::detail {

// Carries the failing word out of a per-word callback so the corpus driver
// can attach line context before rethrowing.
struct WordError {
  std::string word;
  std::string reason;
};

using WordTokenizeFn =
    std::function<std::vector<std::string>(const std::string&)>;
using TokenPredicate = std::function<bool(const std::string&)>;

// Rethrows a WordError as a runtime_error naming the first line the word
// occurs on.
[[noreturn]] void rethrow_with_line(const Corpus& corpus,
                                    const WordError& err);

// Tokenizes each distinct word once, optionally fanning out over threads.
// Results are keyed by word; the fan-out is deterministic because words are
// independent.
std::unordered_map<std::string, std::vector<std::string>> tokenize_distinct(
    const Corpus& corpus, const WordTokenizeFn& fn, unsigned threads);

// Runs word_fn over every distinct word and assembles per-line token
// sequences, corpus-wide token counts, and the sorted out-of-vocabulary set
// (tokens for which in_vocab is false).
TokenizedCorpus assemble_tokenized_corpus(const Corpus& corpus,
                                          const WordTokenizeFn& word_fn,
                                          const TokenPredicate& in_vocab,
                                          unsigned threads);

}  // namespace toklab::detail

#endif  // TOKLAB_DETAIL_HPP
