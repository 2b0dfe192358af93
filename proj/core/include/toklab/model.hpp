#ifndef TOKLAB_MODEL_HPP
#define TOKLAB_MODEL_HPP

// A tokenizer model is a base tokenizer plus an optional variant decoration.
// All corpus-level entry points dispatch on the decoration, so downstream
// metric and report code never branches on the variant kind.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "toklab/bpe.hpp"
#include "toklab/corpus.hpp"
#include "toklab/variants.hpp"

namespace toklab {

using VariantSpec = std::variant<std::monostate, RandomDropSpec,
                                 DuplicationSpec, InflationSpec>;

struct TokenizerModel {
  Tokenizer base;
  VariantSpec variant;  // monostate = plain baseline
};

// "baseline", "random_drop", "duplication", or "inflate".
const char* variant_kind(const TokenizerModel& model);

// Vocabulary size after the decoration: |V| for the baseline, |V| - |D| for
// drops, |V| + (k-1)|X| for duplication (originals replaced by k duplicates),
// |V| + extra for inflation.
std::size_t effective_vocab_size(const TokenizerModel& model);

// Tokenizes one word under the decoration. Duplication draws per-occurrence
// indices from (line_index, word_index, position), so the position must be
// the word's true location; other variants ignore it. Duplicated tokens come
// back in rendered form ("ing#DUP3").
std::vector<std::string> model_tokenize_word(
    const TokenizerModel& model, std::string_view word,
    std::uint64_t line_index, std::uint64_t word_index,
    OovPolicy policy = OovPolicy::kReject);

// Corpus-level tokenization under the decoration. Token counts are keyed by
// rendered token identity, so duplicated occurrences of the same surface
// count separately.
TokenizedCorpus tokenize_corpus(const TokenizerModel& model,
                                const Corpus& corpus,
                                OovPolicy policy = OovPolicy::kReject,
                                unsigned threads = 1);

// Human-readable rendering: one output line per corpus line, tokens
// space-separated, non-initial subwords of a word prefixed with "-".
std::vector<std::string> render_corpus_lines(
    const TokenizerModel& model, const Corpus& corpus,
    OovPolicy policy = OovPolicy::kReject, unsigned threads = 1);

}  // namespace toklab

#endif  // TOKLAB_MODEL_HPP
