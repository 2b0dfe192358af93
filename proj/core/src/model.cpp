#include "toklab/model.hpp"

#include <set>
#include <stdexcept>
#include <thread>

#include "toklab/detail.hpp"
#include "toklab/rng.hpp"

namespace toklab {

const char* variant_kind(const TokenizerModel& model) {
  switch (model.variant.index()) {
    case 1:
      return "random_drop";
    case 2:
      return "duplication";
    case 3:
      return "inflate";
    default:
      return "baseline";
  }
}

std::size_t effective_vocab_size(const TokenizerModel& model) {
  const std::size_t v = model.base.vocab_size();
  if (const auto* drop = std::get_if<RandomDropSpec>(&model.variant)) {
    return v - drop->drop_set.size();
  }
  if (const auto* dup = std::get_if<DuplicationSpec>(&model.variant)) {
    return v + (dup->factor - 1) * dup->duplicated_set.size();
  }
  if (const auto* inf = std::get_if<InflationSpec>(&model.variant)) {
    return v + inf->synthetic.size();
  }
  return v;
}

std::vector<std::string> model_tokenize_word(const TokenizerModel& model,
                                             std::string_view word,
                                             std::uint64_t line_index,
                                             std::uint64_t word_index,
                                             OovPolicy policy) {
  if (const auto* drop = std::get_if<RandomDropSpec>(&model.variant)) {
    return random_drop_tokenize(*drop, model.base, word, policy);
  }
  if (const auto* dup = std::get_if<DuplicationSpec>(&model.variant)) {
    std::vector<DecoratedToken> decorated = duplication_tokenize(
        *dup, model.base, word, line_index, word_index, policy);
    std::vector<std::string> out;
    out.reserve(decorated.size());
    for (const DecoratedToken& d : decorated) {
      out.push_back(render_decorated(d));
    }
    return out;
  }
  return model.base.tokenize(word, policy);
}

namespace {

// Wraps per-word tokenization failures so the corpus driver can attach the
// offending line.
detail::WordTokenizeFn guarded(
    std::function<std::vector<std::string>(const std::string&)> fn) {
  return [fn = std::move(fn)](const std::string& w) {
    try {
      return fn(w);
    } catch (const std::exception& e) {
      throw detail::WordError{w, e.what()};
    }
  };
}

// Duplication needs per-occurrence sampling, so counts come from a full walk
// over the lines rather than from the distinct-word table.
TokenizedCorpus duplication_corpus(const DuplicationSpec& spec,
                                   const Tokenizer& base,
                                   const Corpus& corpus, OovPolicy policy,
                                   unsigned threads) {
  if (corpus.lines.empty()) {
    throw std::invalid_argument("tokenize_corpus: corpus has no lines");
  }
  std::unordered_map<std::string, std::vector<std::string>> memo;
  try {
    memo = detail::tokenize_distinct(
        corpus, guarded([&](const std::string& w) {
          return base.tokenize(w, policy);
        }),
        threads);
  } catch (const detail::WordError& e) {
    detail::rethrow_with_line(corpus, e);
  }

  TokenizedCorpus out;
  out.source_line_count = corpus.lines.size();
  out.line_tokens.resize(corpus.lines.size());

  const auto process_line = [&](std::size_t li) {
    std::vector<std::string> toks;
    std::uint64_t wi = 0;
    for (std::string_view w : split_words(corpus.lines[li])) {
      const auto& base_tokens = memo.at(std::string(w));
      for (std::size_t pos = 0; pos < base_tokens.size(); ++pos) {
        DecoratedToken d{base_tokens[pos], 0};
        if (spec.duplicates(d.surface)) {
          d.index = 1 + static_cast<std::uint32_t>(counter_uniform(
                            spec.seed, li, wi, pos, spec.factor));
        }
        toks.push_back(render_decorated(d));
      }
      ++wi;
    }
    out.line_tokens[li] = std::move(toks);
  };

  if (threads <= 1 || corpus.lines.size() < 1024) {
    for (std::size_t li = 0; li < corpus.lines.size(); ++li) {
      process_line(li);
    }
  } else {
    const unsigned n = std::max(
        1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t li = t; li < corpus.lines.size(); li += n) {
          process_line(li);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::set<std::string> oov;
  for (const auto& line : out.line_tokens) {
    for (const std::string& t : line) {
      ++out.token_counts[t];
      ++out.total_tokens;
      const DecoratedToken d = parse_decorated(t);
      if (!base.contains(d.surface)) oov.insert(t);
    }
  }
  out.oov_tokens.assign(oov.begin(), oov.end());
  return out;
}

}  // namespace

TokenizedCorpus tokenize_corpus(const TokenizerModel& model,
                                const Corpus& corpus, OovPolicy policy,
                                unsigned threads) {
  if (const auto* dup = std::get_if<DuplicationSpec>(&model.variant)) {
    return duplication_corpus(*dup, model.base, corpus, policy, threads);
  }
  const auto in_vocab = [&](const std::string& t) {
    return model.base.contains(t);
  };
  if (const auto* drop = std::get_if<RandomDropSpec>(&model.variant)) {
    return detail::assemble_tokenized_corpus(
        corpus, guarded([&, drop](const std::string& w) {
          return random_drop_tokenize(*drop, model.base, w, policy);
        }),
        in_vocab, threads);
  }
  return detail::assemble_tokenized_corpus(
      corpus, guarded([&](const std::string& w) {
        return model.base.tokenize(w, policy);
      }),
      in_vocab, threads);
}

std::vector<std::string> render_corpus_lines(const TokenizerModel& model,
                                             const Corpus& corpus,
                                             OovPolicy policy,
                                             unsigned threads) {
  if (corpus.lines.empty()) {
    throw std::invalid_argument("render_corpus_lines: corpus has no lines");
  }
  const auto* dup = std::get_if<DuplicationSpec>(&model.variant);

  // For duplication the table holds undecorated base tokenizations and the
  // per-occurrence index is drawn during assembly; for everything else the
  // table already holds the final tokens.
  std::unordered_map<std::string, std::vector<std::string>> memo;
  try {
    memo = detail::tokenize_distinct(
        corpus, guarded([&](const std::string& w) {
          return dup != nullptr ? model.base.tokenize(w, policy)
                                : model_tokenize_word(model, w, 0, 0, policy);
        }),
        threads);
  } catch (const detail::WordError& e) {
    detail::rethrow_with_line(corpus, e);
  }

  std::vector<std::string> out;
  out.reserve(corpus.lines.size());
  for (std::size_t li = 0; li < corpus.lines.size(); ++li) {
    std::string rendered;
    std::uint64_t wi = 0;
    for (std::string_view w : split_words(corpus.lines[li])) {
      const auto& tokens = memo.at(std::string(w));
      for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
        if (!rendered.empty()) rendered += ' ';
        if (pos > 0) rendered += '-';
        if (dup != nullptr) {
          DecoratedToken d{tokens[pos], 0};
          if (dup->duplicates(d.surface)) {
            d.index = 1 + static_cast<std::uint32_t>(counter_uniform(
                              dup->seed, li, wi, pos, dup->factor));
          }
          rendered += render_decorated(d);
        } else {
          rendered += tokens[pos];
        }
      }
      ++wi;
    }
    out.push_back(std::move(rendered));
  }
  return out;
}

}  // namespace toklab
