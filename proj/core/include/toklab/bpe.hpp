#ifndef TOKLAB_BPE_HPP
#define TOKLAB_BPE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "toklab/corpus.hpp"

namespace toklab {

// One entry of the ordered merge list. result is always left + right.
struct Merge {
  std::string left;
  std::string right;
  std::string result;
  std::uint32_t rank = 0;
};

// Policy for characters outside the trained alphabet.
enum class OovPolicy {
  kReject,       // throw
  kPassThrough,  // keep the character as an atomic token, flagged unknown
};

struct PairHash {
  std::size_t operator()(const std::pair<std::string, std::string>& p) const {
    const std::size_t h1 = std::hash<std::string>()(p.first);
    const std::size_t h2 = std::hash<std::string>()(p.second);
    return h1 ^ (h2 + 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2));
  }
};

// A trained tokenizer: alphabet of atomic subwords plus the ordered merge
// list. The subword vocabulary is the alphabet united with every merge
// result. Immutable after construction and safe to share across threads.
class Tokenizer {
 public:
  Tokenizer() = default;

  // Validates: results concatenate left+right; operands are atomic or
  // produced by an earlier merge; no duplicate (left, right) pairs.
  // Throws std::invalid_argument on violation.
  Tokenizer(std::vector<std::string> alphabet, std::vector<Merge> merges);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Merge>& merges() const { return merges_; }

  // Sorted Σ ∪ {merge results}. Distinct strings; two merges may share a
  // result, which the set collapses.
  std::vector<std::string> vocab() const;
  std::size_t vocab_size() const { return vocab_size_; }

  bool is_atomic(std::string_view token) const;
  bool contains(std::string_view token) const;  // membership in V

  // Earliest-ranked merge whose result equals `token`; nullptr for atomic
  // or unknown tokens.
  const Merge* merge_for(std::string_view token) const;

  // Standard BPE tokenization: start from the character sequence and apply
  // every merge in rank order. Implemented with a rank-ordered candidate
  // heap; tests check it against the plain scan over the merge list.
  std::vector<std::string> tokenize(std::string_view word,
                                    OovPolicy policy = OovPolicy::kReject) const;

 private:
  std::vector<std::string> alphabet_;  // sorted
  std::vector<Merge> merges_;
  std::size_t vocab_size_ = 0;
  std::unordered_set<std::string> alphabet_set_;
  std::unordered_set<std::string> vocab_set_;
  std::unordered_map<std::pair<std::string, std::string>, std::uint32_t,
                     PairHash>
      pair_rank_;
  std::unordered_map<std::string, std::uint32_t> result_rank_;  // earliest
};

// Replaces every adjacent (merge.left, merge.right) with merge.result,
// scanning left to right and resuming after each newly formed token.
std::vector<std::string> apply_merge(const Merge& merge,
                                     const std::vector<std::string>& seq);

// Trains a tokenizer on the corpus: at each step merge the most frequent
// adjacent pair over the word-level tokenizations (weighted by word count).
// Ties break toward the lexicographically smallest result string, then the
// smallest left operand. Stops early once the best pair occurs fewer than
// twice. Throws std::invalid_argument on an empty corpus.
Tokenizer train_bpe(const Corpus& corpus, std::size_t num_merges);

// A tokenized corpus. Token keys are identity strings: plain subwords for
// baseline/random-drop models, decorated "surface#DUPi" strings for
// duplication models.
struct TokenizedCorpus {
  std::vector<std::vector<std::string>> line_tokens;
  std::unordered_map<std::string, std::int64_t> token_counts;
  std::int64_t total_tokens = 0;
  std::size_t source_line_count = 0;
  // Tokens emitted under OovPolicy::kPassThrough that are not in the
  // vocabulary; sorted, empty under kReject.
  std::vector<std::string> oov_tokens;
};

// Tokenizes every word of the corpus (memoized per distinct word) and
// aggregates counts. threads > 1 fans the distinct words out over a small
// pool; results are identical to the sequential run.
TokenizedCorpus tokenize_corpus(const Tokenizer& tokenizer,
                                const Corpus& corpus,
                                OovPolicy policy = OovPolicy::kReject,
                                unsigned threads = 1);

}  // namespace toklab

#endif  // TOKLAB_BPE_HPP
