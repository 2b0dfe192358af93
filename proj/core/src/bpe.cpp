#include "toklab/bpe.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>

#include "toklab/detail.hpp"
#include "toklab/utf8.hpp"

namespace toklab {

namespace {

using StringPair = std::pair<std::string, std::string>;

}  // namespace

Tokenizer::Tokenizer(std::vector<std::string> alphabet,
                     std::vector<Merge> merges)
    : alphabet_(std::move(alphabet)), merges_(std::move(merges)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()),
                  alphabet_.end());
  for (const std::string& a : alphabet_) {
    if (a.empty()) throw std::invalid_argument("empty atomic subword");
    alphabet_set_.insert(a);
    vocab_set_.insert(a);
  }
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    Merge& m = merges_[i];
    m.rank = static_cast<std::uint32_t>(i);
    if (m.result.empty()) m.result = m.left + m.right;
    if (m.result != m.left + m.right) {
      throw std::invalid_argument("merge result is not left+right at rank " +
                                  std::to_string(i));
    }
    const auto known = [&](const std::string& s) {
      return alphabet_set_.count(s) > 0 || result_rank_.count(s) > 0;
    };
    if (!known(m.left) || !known(m.right)) {
      throw std::invalid_argument(
          "merge operand not atomic and not produced earlier at rank " +
          std::to_string(i));
    }
    if (!pair_rank_.emplace(StringPair{m.left, m.right}, m.rank).second) {
      throw std::invalid_argument("duplicate merge pair at rank " +
                                  std::to_string(i));
    }
    result_rank_.emplace(m.result, m.rank);  // keeps the earliest rank
    vocab_set_.insert(m.result);
  }
  vocab_size_ = vocab_set_.size();
}

std::vector<std::string> Tokenizer::vocab() const {
  std::vector<std::string> out(vocab_set_.begin(), vocab_set_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Tokenizer::is_atomic(std::string_view token) const {
  return alphabet_set_.count(std::string(token)) > 0;
}

bool Tokenizer::contains(std::string_view token) const {
  return vocab_set_.count(std::string(token)) > 0;
}

const Merge* Tokenizer::merge_for(std::string_view token) const {
  const auto it = result_rank_.find(std::string(token));
  if (it == result_rank_.end()) return nullptr;
  return &merges_[it->second];
}

namespace {

// Candidate adjacency for the tokenize heap. The heap pops the lowest rank
// first and, within a rank, the leftmost occurrence.
struct Candidate {
  std::uint32_t rank;
  std::uint32_t left;  // node index
  std::uint32_t left_version;
  std::uint32_t right;
  std::uint32_t right_version;
};

struct CandidateAfter {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.rank != b.rank) return a.rank > b.rank;
    return a.left > b.left;
  }
};

struct TokenNode {
  std::string token;
  std::int32_t prev = -1;
  std::int32_t next = -1;
  std::uint32_t version = 0;
  bool alive = true;
};

}  // namespace

std::vector<std::string> Tokenizer::tokenize(std::string_view word,
                                             OovPolicy policy) const {
  std::vector<std::string> chars = utf8::split_scalars(word);
  if (chars.empty()) {
    throw std::invalid_argument("tokenize: empty word");
  }
  if (policy == OovPolicy::kReject) {
    for (const std::string& c : chars) {
      if (!alphabet_set_.count(c)) {
        throw std::runtime_error("character \"" + c +
                                 "\" is not in the alphabet");
      }
    }
  }
  if (chars.size() == 1 || merges_.empty()) return chars;

  std::vector<TokenNode> nodes;
  nodes.reserve(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    TokenNode node;
    node.token = std::move(chars[i]);
    node.prev = static_cast<std::int32_t>(i) - 1;
    node.next =
        i + 1 < chars.size() ? static_cast<std::int32_t>(i + 1) : -1;
    nodes.push_back(std::move(node));
  }

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateAfter> heap;
  const auto try_push = [&](std::int32_t li, std::int32_t ri,
                            std::int64_t min_rank_exclusive) {
    if (li < 0 || ri < 0) return;
    const auto it =
        pair_rank_.find(StringPair{nodes[li].token, nodes[ri].token});
    if (it == pair_rank_.end()) return;
    // A pass at rank r has already swept everything at or below r, so a
    // freshly created pair only competes when its rank is strictly higher.
    if (static_cast<std::int64_t>(it->second) <= min_rank_exclusive) return;
    heap.push({it->second, static_cast<std::uint32_t>(li),
               nodes[li].version, static_cast<std::uint32_t>(ri),
               nodes[ri].version});
  };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    try_push(static_cast<std::int32_t>(i), static_cast<std::int32_t>(i + 1),
             -1);
  }

  while (!heap.empty()) {
    const Candidate c = heap.top();
    heap.pop();
    if (!nodes[c.left].alive || !nodes[c.right].alive) continue;
    if (nodes[c.left].version != c.left_version ||
        nodes[c.right].version != c.right_version) {
      continue;
    }
    if (nodes[c.left].next != static_cast<std::int32_t>(c.right)) continue;

    // Merge: the left node takes the combined token, the right node dies.
    TokenNode& left = nodes[c.left];
    TokenNode& right = nodes[c.right];
    left.token += right.token;
    left.version++;
    right.alive = false;
    left.next = right.next;
    if (right.next >= 0) {
      nodes[right.next].prev = static_cast<std::int32_t>(c.left);
    }

    try_push(left.prev, static_cast<std::int32_t>(c.left), c.rank);
    try_push(static_cast<std::int32_t>(c.left), left.next, c.rank);
  }

  std::vector<std::string> out;
  for (std::int32_t i = 0; i >= 0; i = nodes[i].next) {
    out.push_back(std::move(nodes[i].token));
  }
  return out;
}

std::vector<std::string> apply_merge(const Merge& merge,
                                     const std::vector<std::string>& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  std::size_t i = 0;
  while (i < seq.size()) {
    if (i + 1 < seq.size() && seq[i] == merge.left &&
        seq[i + 1] == merge.right) {
      out.push_back(merge.result);
      i += 2;  // resume after the newly formed token
    } else {
      out.push_back(seq[i]);
      ++i;
    }
  }
  return out;
}

namespace {

// Heap entry for merge selection during training. Highest count wins; ties
// break toward the lexicographically smallest result, then smallest left.
struct PairEntry {
  std::int64_t count;
  std::string result;
  std::string left;
  std::string right;
};

struct PairEntryAfter {
  bool operator()(const PairEntry& a, const PairEntry& b) const {
    if (a.count != b.count) return a.count < b.count;
    if (a.result != b.result) return a.result > b.result;
    return a.left > b.left;
  }
};

void count_adjacent(
    const std::vector<std::string>& tokens,
    std::unordered_map<StringPair, std::int64_t, PairHash>& out) {
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    ++out[StringPair{tokens[i], tokens[i + 1]}];
  }
}

}  // namespace

Tokenizer train_bpe(const Corpus& corpus, std::size_t num_merges) {
  if (corpus.total_words < 1) {
    throw std::invalid_argument("train_bpe: corpus has no words");
  }

  std::vector<std::vector<std::string>> words;
  std::vector<std::int64_t> word_weight;
  words.reserve(corpus.word_counts.size());
  std::set<std::string> alphabet;  // ordered so Σ comes out sorted
  for (const auto& [word, count] : corpus.word_counts) {
    std::vector<std::string> chars = utf8::split_scalars(word);
    for (const std::string& c : chars) alphabet.insert(c);
    words.push_back(std::move(chars));
    word_weight.push_back(count);
  }

  std::unordered_map<StringPair, std::int64_t, PairHash> pair_counts;
  std::unordered_map<StringPair, std::unordered_set<std::uint32_t>, PairHash>
      pair_words;
  std::priority_queue<PairEntry, std::vector<PairEntry>, PairEntryAfter> heap;

  for (std::uint32_t w = 0; w < words.size(); ++w) {
    std::unordered_map<StringPair, std::int64_t, PairHash> local;
    count_adjacent(words[w], local);
    for (const auto& [pair, occurrences] : local) {
      pair_counts[pair] += occurrences * word_weight[w];
      pair_words[pair].insert(w);
    }
  }
  for (const auto& [pair, count] : pair_counts) {
    heap.push({count, pair.first + pair.second, pair.first, pair.second});
  }

  std::vector<Merge> merges;
  merges.reserve(num_merges);
  while (merges.size() < num_merges && !heap.empty()) {
    const PairEntry top = heap.top();
    heap.pop();
    const StringPair pair{top.left, top.right};
    const auto it = pair_counts.find(pair);
    if (it == pair_counts.end() || it->second != top.count) continue;  // stale
    if (top.count < 2) break;  // a once-seen pair would make a one-use token

    Merge merge{top.left, top.right, top.result,
                static_cast<std::uint32_t>(merges.size())};

    auto affected_it = pair_words.find(pair);
    std::vector<std::uint32_t> affected;
    if (affected_it != pair_words.end()) {
      affected.assign(affected_it->second.begin(), affected_it->second.end());
      std::sort(affected.begin(), affected.end());
      pair_words.erase(affected_it);
    }
    for (const std::uint32_t w : affected) {
      std::unordered_map<StringPair, std::int64_t, PairHash> before;
      count_adjacent(words[w], before);
      if (!before.count(pair)) continue;  // stale registration
      words[w] = apply_merge(merge, words[w]);
      std::unordered_map<StringPair, std::int64_t, PairHash> after;
      count_adjacent(words[w], after);
      for (const auto& [p, n] : after) {
        const auto b = before.find(p);
        const std::int64_t delta = n - (b == before.end() ? 0 : b->second);
        if (b != before.end()) before.erase(b);
        if (delta != 0) {
          const std::int64_t updated =
              (pair_counts[p] += delta * word_weight[w]);
          heap.push({updated, p.first + p.second, p.first, p.second});
        }
        pair_words[p].insert(w);
      }
      // Pairs that vanished from this word entirely. A full left-to-right
      // pass leaves no occurrence of the merged pair itself, so it always
      // lands here.
      for (const auto& [p, n] : before) {
        const std::int64_t updated = (pair_counts[p] -= n * word_weight[w]);
        if (p != pair) {
          heap.push({updated, p.first + p.second, p.first, p.second});
        }
      }
    }
    pair_counts.erase(pair);
    merges.push_back(std::move(merge));
  }

  return Tokenizer(std::vector<std::string>(alphabet.begin(), alphabet.end()),
                   std::move(merges));
}

namespace detail {

std::unordered_map<std::string, std::vector<std::string>> tokenize_distinct(
    const Corpus& corpus, const WordTokenizeFn& fn, unsigned threads) {
  std::vector<const std::string*> distinct;
  distinct.reserve(corpus.word_counts.size());
  for (const auto& [word, count] : corpus.word_counts) {
    distinct.push_back(&word);
  }

  std::unordered_map<std::string, std::vector<std::string>> result;
  result.reserve(distinct.size());

  if (threads <= 1 || distinct.size() < 256) {
    for (const std::string* w : distinct) result.emplace(*w, fn(*w));
    return result;
  }

  const unsigned n = std::max(
      1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
  std::vector<std::vector<std::pair<std::string, std::vector<std::string>>>>
      partial(n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < distinct.size(); i += n) {
          partial[t].emplace_back(*distinct[i], fn(*distinct[i]));
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& chunk : partial) {
    for (auto& [word, tokens] : chunk) {
      result.emplace(std::move(word), std::move(tokens));
    }
  }
  return result;
}

void rethrow_with_line(const Corpus& corpus, const WordError& err) {
  for (std::size_t i = 0; i < corpus.lines.size(); ++i) {
    for (std::string_view w : split_words(corpus.lines[i])) {
      if (w == err.word) {
        throw std::runtime_error("line " + std::to_string(i + 1) +
                                 ", word \"" + err.word +
                                 "\": " + err.reason);
      }
    }
  }
  throw std::runtime_error("word \"" + err.word + "\": " + err.reason);
}

TokenizedCorpus assemble_tokenized_corpus(const Corpus& corpus,
                                          const WordTokenizeFn& word_fn,
                                          const TokenPredicate& in_vocab,
                                          unsigned threads) {
  if (corpus.lines.empty()) {
    throw std::invalid_argument("tokenize_corpus: corpus has no lines");
  }
  std::unordered_map<std::string, std::vector<std::string>> memo;
  try {
    memo = tokenize_distinct(corpus, word_fn, threads);
  } catch (const WordError& e) {
    rethrow_with_line(corpus, e);
  }

  TokenizedCorpus out;
  out.source_line_count = corpus.lines.size();
  out.line_tokens.reserve(corpus.lines.size());
  for (const std::string& line : corpus.lines) {
    std::vector<std::string> toks;
    for (std::string_view w : split_words(line)) {
      const auto& word_tokens = memo.at(std::string(w));
      toks.insert(toks.end(), word_tokens.begin(), word_tokens.end());
    }
    out.line_tokens.push_back(std::move(toks));
  }

  std::set<std::string> oov;
  for (const auto& [word, count] : corpus.word_counts) {
    for (const std::string& t : memo.at(word)) {
      out.token_counts[t] += count;
      out.total_tokens += count;
      if (!in_vocab(t)) oov.insert(t);
    }
  }
  out.oov_tokens.assign(oov.begin(), oov.end());
  return out;
}

}  // namespace detail

TokenizedCorpus tokenize_corpus(const Tokenizer& tokenizer,
                                const Corpus& corpus, OovPolicy policy,
                                unsigned threads) {
  return detail::assemble_tokenized_corpus(
      corpus,
      [&](const std::string& w) {
        try {
          return tokenizer.tokenize(w, policy);
        } catch (const std::exception& e) {
          throw detail::WordError{w, e.what()};
        }
      },
      [&](const std::string& t) { return tokenizer.contains(t); }, threads);
}

}  // namespace toklab
