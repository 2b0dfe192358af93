#include "toklab/variants.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "toklab/rng.hpp"

namespace toklab {

namespace {

// (count desc, token asc) frequency ranking used by both selection ops.
void rank_by_count(std::vector<std::pair<std::string, std::int64_t>>& items) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
}

}  // namespace

bool RandomDropSpec::drops(std::string_view token) const {
  return std::binary_search(drop_set.begin(), drop_set.end(), token);
}

bool DuplicationSpec::duplicates(std::string_view token) const {
  return std::binary_search(duplicated_set.begin(), duplicated_set.end(),
                            token);
}

RandomDropSpec select_drop_set(const TokenizedCorpus& tokenized,
                               const Tokenizer& base, std::size_t pool_size,
                               std::size_t drop_count, std::uint64_t seed) {
  if (drop_count < 1 || drop_count > pool_size ||
      pool_size > base.vocab_size()) {
    throw std::invalid_argument(
        "drop-set selection needs 1 <= k <= N <= |V| (k=" +
        std::to_string(drop_count) + ", N=" + std::to_string(pool_size) +
        ", |V|=" + std::to_string(base.vocab_size()) + ")");
  }

  std::vector<std::pair<std::string, std::int64_t>> ranked;
  ranked.reserve(base.vocab_size());
  for (std::string& token : base.vocab()) {
    const auto it = tokenized.token_counts.find(token);
    const std::int64_t count =
        it == tokenized.token_counts.end() ? 0 : it->second;
    ranked.emplace_back(std::move(token), count);
  }
  rank_by_count(ranked);

  std::vector<std::string> pool;
  for (std::size_t rank = 0; rank < pool_size; ++rank) {
    if (!base.is_atomic(ranked[rank].first)) {
      pool.push_back(std::move(ranked[rank].first));
    }
  }
  if (pool.size() < drop_count) {
    throw std::invalid_argument(
        "only " + std::to_string(pool.size()) +
        " non-atomic subwords in the top " + std::to_string(pool_size) +
        ", need " + std::to_string(drop_count));
  }

  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < drop_count; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(drop_count);
  std::sort(pool.begin(), pool.end());

  RandomDropSpec spec;
  spec.pool_size = pool_size;
  spec.drop_count = drop_count;
  spec.seed = seed;
  spec.drop_set = std::move(pool);
  return spec;
}

namespace {

void decompose_into(const RandomDropSpec& spec, const Tokenizer& base,
                    const std::string& token,
                    std::vector<std::string>& out) {
  if (!spec.drops(token)) {
    out.push_back(token);
    return;
  }
  const Merge* m = base.merge_for(token);
  if (m == nullptr) {
    // Drop sets only ever hold non-atomic vocabulary entries.
    throw std::logic_error("dropped token \"" + token +
                           "\" has no producing merge");
  }
  decompose_into(spec, base, m->left, out);
  decompose_into(spec, base, m->right, out);
}

}  // namespace

std::vector<std::string> decompose(const RandomDropSpec& spec,
                                   const Tokenizer& base,
                                   std::string_view token) {
  const std::string t(token);
  if (!base.contains(t)) {
    throw std::invalid_argument("decompose: \"" + t +
                                "\" is not a vocabulary entry");
  }
  std::vector<std::string> out;
  decompose_into(spec, base, t, out);
  return out;
}

std::vector<std::string> random_drop_tokenize(const RandomDropSpec& spec,
                                              const Tokenizer& base,
                                              std::string_view word,
                                              OovPolicy policy) {
  const std::vector<std::string> tokens = base.tokenize(word, policy);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) decompose_into(spec, base, t, out);
  return out;
}

DuplicationSpec select_duplication_set(const TokenizedCorpus& tokenized,
                                       std::size_t top_count,
                                       std::uint32_t factor,
                                       std::uint64_t seed) {
  if (factor < 2) {
    throw std::invalid_argument("duplication factor must be at least 2");
  }
  if (top_count < 1 || top_count > tokenized.token_counts.size()) {
    throw std::invalid_argument(
        "duplication set size must be in 1.." +
        std::to_string(tokenized.token_counts.size()) + ", got " +
        std::to_string(top_count));
  }

  std::vector<std::pair<std::string, std::int64_t>> ranked(
      tokenized.token_counts.begin(), tokenized.token_counts.end());
  rank_by_count(ranked);

  std::vector<std::string> top;
  top.reserve(top_count);
  for (std::size_t i = 0; i < top_count; ++i) {
    top.push_back(std::move(ranked[i].first));
  }
  std::sort(top.begin(), top.end());

  DuplicationSpec spec;
  spec.top_count = top_count;
  spec.factor = factor;
  spec.seed = seed;
  spec.duplicated_set = std::move(top);
  return spec;
}

std::vector<DecoratedToken> duplication_tokenize(const DuplicationSpec& spec,
                                                 const Tokenizer& base,
                                                 std::string_view word,
                                                 std::uint64_t line_index,
                                                 std::uint64_t word_index,
                                                 OovPolicy policy) {
  const std::vector<std::string> tokens = base.tokenize(word, policy);
  std::vector<DecoratedToken> out;
  out.reserve(tokens.size());
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    DecoratedToken d{tokens[pos], 0};
    if (spec.duplicates(d.surface)) {
      d.index = 1 + static_cast<std::uint32_t>(counter_uniform(
                        spec.seed, line_index, word_index, pos, spec.factor));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::string> renormalize(
    const std::vector<DecoratedToken>& decorated) {
  std::vector<std::string> out;
  out.reserve(decorated.size());
  for (const DecoratedToken& d : decorated) out.push_back(d.surface);
  return out;
}

std::string render_decorated(const DecoratedToken& token) {
  if (token.index == 0) return token.surface;
  std::string out = token.surface;
  out += kDupMarker;
  out += std::to_string(token.index);
  return out;
}

DecoratedToken parse_decorated(std::string_view text) {
  const std::size_t pos = text.rfind(kDupMarker);
  if (pos == std::string_view::npos) {
    return DecoratedToken{std::string(text), 0};
  }
  const std::string_view digits = text.substr(pos + kDupMarker.size());
  std::uint32_t index = 0;
  const auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || end != digits.data() + digits.size() ||
      index == 0) {
    throw std::invalid_argument("malformed decorated token \"" +
                                std::string(text) + "\"");
  }
  return DecoratedToken{std::string(text.substr(0, pos)), index};
}

InflationSpec inflate_vocab(const Tokenizer& base, std::uint64_t extra) {
  InflationSpec spec;
  spec.extra_tokens = extra;
  spec.synthetic.reserve(extra);
  std::uint64_t next = 0;
  while (spec.synthetic.size() < extra) {
    std::string name = std::string(kDupMarker) + "V" + std::to_string(next++);
    if (!base.contains(name)) spec.synthetic.push_back(std::move(name));
  }
  return spec;
}

}  // namespace toklab
