#ifndef TOKLAB_VARIANTS_HPP
#define TOKLAB_VARIANTS_HPP

// Adversarial decorations of a base tokenizer: random decomposition of
// frequent subwords, same-surface token duplication, and vocabulary
// inflation. Each spec is immutable once built and fully determined by
// (base tokenizer, corpus frequencies, hyperparameters, seed).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "toklab/bpe.hpp"
#include "toklab/corpus.hpp"  // kDupMarker

namespace toklab {

struct RandomDropSpec {
  std::size_t pool_size = 0;   // N: frequency ranks considered
  std::size_t drop_count = 0;  // k: subwords drawn from the pool
  std::uint64_t seed = 0;
  std::vector<std::string> drop_set;  // sorted; every member non-atomic

  bool drops(std::string_view token) const;
};

struct DuplicationSpec {
  std::size_t top_count = 0;  // N: tokens that get duplicated
  std::uint32_t factor = 2;   // k: duplicates per token
  std::uint64_t seed = 0;
  std::vector<std::string> duplicated_set;  // sorted

  bool duplicates(std::string_view token) const;
};

struct InflationSpec {
  std::uint64_t extra_tokens = 0;
  // Synthetic vocabulary entries; carry the reserved marker so they can
  // never surface in a tokenization.
  std::vector<std::string> synthetic;
};

// Token plus duplicate identity. index 0 means undecorated; members of the
// duplicated set always carry an index in 1..k.
struct DecoratedToken {
  std::string surface;
  std::uint32_t index = 0;

  friend bool operator==(const DecoratedToken&,
                         const DecoratedToken&) = default;
};

// Draws `drop_count` subwords, uniformly without replacement, from the
// non-atomic subwords among the top `pool_size` vocabulary entries ranked by
// corpus frequency (descending, ties lexicographic). Unsurfaced vocabulary
// entries rank last. Throws if the pool holds fewer than `drop_count`
// non-atomic subwords.
RandomDropSpec select_drop_set(const TokenizedCorpus& tokenized,
                               const Tokenizer& base, std::size_t pool_size,
                               std::size_t drop_count, std::uint64_t seed);

// Recursively splits `token` back into its merge operands while the current
// token is in the drop set; anything outside the set is returned whole.
std::vector<std::string> decompose(const RandomDropSpec& spec,
                                   const Tokenizer& base,
                                   std::string_view token);

// Standard tokenization first, decomposition after; never emits a member of
// the drop set and always preserves the word's surface.
std::vector<std::string> random_drop_tokenize(
    const RandomDropSpec& spec, const Tokenizer& base, std::string_view word,
    OovPolicy policy = OovPolicy::kReject);

// X = top `top_count` surfaced tokens by corpus frequency (descending, ties
// lexicographic).
DuplicationSpec select_duplication_set(const TokenizedCorpus& tokenized,
                                       std::size_t top_count,
                                       std::uint32_t factor,
                                       std::uint64_t seed);

// Standard tokenization, then every token in the duplicated set gets an
// index drawn uniformly from 1..factor as a pure function of
// (seed, line_index, word_index, token position). Surfaces never change.
std::vector<DecoratedToken> duplication_tokenize(
    const DuplicationSpec& spec, const Tokenizer& base, std::string_view word,
    std::uint64_t line_index, std::uint64_t word_index,
    OovPolicy policy = OovPolicy::kReject);

// Strips duplicate indices, recovering the base tokenization exactly.
std::vector<std::string> renormalize(
    const std::vector<DecoratedToken>& decorated);

// "ing" for index 0, "ing#DUP3" for index 3.
std::string render_decorated(const DecoratedToken& token);
DecoratedToken parse_decorated(std::string_view text);

// Adds `extra` fresh synthetic entries to the vocabulary; tokenization is
// untouched, only the vocabulary-size accounting changes.
InflationSpec inflate_vocab(const Tokenizer& base, std::uint64_t extra);

}  // namespace toklab

#endif  // TOKLAB_VARIANTS_HPP
