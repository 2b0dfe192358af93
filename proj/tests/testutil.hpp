#ifndef TOKLAB_TESTS_TESTUTIL_HPP
#define TOKLAB_TESTS_TESTUTIL_HPP

// Shared test helpers: slow-but-obvious reference implementations of the
// tokenizer and trainer (used as oracles against the optimized library
// code), small random-corpus generators, and a process-spawning helper for
// the CLI tests.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toklab/bpe.hpp"
#include "toklab/corpus.hpp"
#include "toklab/rng.hpp"

namespace testutil {

// Single left-to-right replacement pass, resuming after each newly formed
// token. Deliberately naive; mirrors the documented merge semantics.
inline std::vector<std::string> reference_apply(
    const std::string& left, const std::string& right,
    const std::vector<std::string>& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  std::size_t i = 0;
  while (i < seq.size()) {
    if (i + 1 < seq.size() && seq[i] == left && seq[i + 1] == right) {
      out.push_back(left + right);
      i += 2;
    } else {
      out.push_back(seq[i]);
      ++i;
    }
  }
  return out;
}

// Plain scan tokenizer: start from the scalar sequence, apply every merge
// in rank order. Oracle for Tokenizer::tokenize.
inline std::vector<std::string> reference_tokenize(
    const std::vector<toklab::Merge>& merges, std::string_view word) {
  std::vector<std::string> seq = toklab::word_to_characters(word);
  for (const auto& m : merges) seq = reference_apply(m.left, m.right, seq);
  return seq;
}

struct ReferenceModel {
  std::vector<std::string> alphabet;                   // sorted
  std::vector<std::pair<std::string, std::string>> merges;  // rank order
};

// Recount-everything trainer: each round rebuilds the full pair count table
// from scratch, picks the most frequent pair (ties: smallest result string,
// then smallest left operand), stops once the best pair occurs fewer than
// twice. Oracle for train_bpe.
inline ReferenceModel reference_train(const toklab::Corpus& corpus,
                                      std::size_t num_merges) {
  std::map<std::string, std::vector<std::string>> segs;
  std::set<std::string> alpha;
  for (const auto& [word, count] : corpus.word_counts) {
    auto chars = toklab::word_to_characters(word);
    for (const auto& c : chars) alpha.insert(c);
    segs.emplace(word, std::move(chars));
  }
  ReferenceModel model;
  model.alphabet.assign(alpha.begin(), alpha.end());
  for (std::size_t round = 0; round < num_merges; ++round) {
    std::map<std::pair<std::string, std::string>, std::int64_t> pair_counts;
    for (const auto& [word, seq] : segs) {
      const std::int64_t weight = corpus.word_counts.at(word);
      for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        pair_counts[{seq[i], seq[i + 1]}] += weight;
    }
    bool have_best = false;
    std::pair<std::string, std::string> best;
    std::int64_t best_count = 0;
    for (const auto& [pair, count] : pair_counts) {
      if (!have_best) {
        have_best = true;
        best = pair;
        best_count = count;
        continue;
      }
      if (count > best_count) {
        best = pair;
        best_count = count;
        continue;
      }
      if (count < best_count) continue;
      const std::string result = pair.first + pair.second;
      const std::string best_result = best.first + best.second;
      if (result < best_result ||
          (result == best_result && pair.first < best.first)) {
        best = pair;
        best_count = count;
      }
    }
    if (!have_best || best_count < 2) break;
    model.merges.push_back(best);
    for (auto& [word, seq] : segs)
      seq = reference_apply(best.first, best.second, seq);
  }
  return model;
}

inline std::string random_word(toklab::SplitMix64& rng,
                               std::string_view chars, std::size_t min_len,
                               std::size_t max_len) {
  const std::size_t len =
      min_len + rng.below(max_len - min_len + 1);
  std::string word;
  word.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    word.push_back(chars[rng.below(chars.size())]);
  return word;
}

inline toklab::Corpus random_corpus(std::uint64_t seed, std::size_t lines,
                                    std::size_t max_words_per_line,
                                    std::string_view chars,
                                    std::size_t min_len,
                                    std::size_t max_len) {
  toklab::SplitMix64 rng(seed);
  std::vector<std::string> text;
  text.reserve(lines);
  for (std::size_t i = 0; i < lines; ++i) {
    const std::size_t words = rng.below(max_words_per_line + 1);
    std::string line;
    for (std::size_t w = 0; w < words; ++w) {
      if (!line.empty()) line.push_back(' ');
      line += random_word(rng, chars, min_len, max_len);
    }
    text.push_back(std::move(line));
  }
  return toklab::corpus_from_lines(std::move(text));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path,
                       std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(std::string_view tag) {
    static std::atomic<unsigned> counter{0};
    const unsigned id = counter.fetch_add(1);
    path = std::filesystem::temp_directory_path() /
           ("toklab_" + std::string(tag) + "_" +
            std::to_string(static_cast<long>(::getpid())) + "_" +
            std::to_string(id));
    std::filesystem::create_directories(path);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs a shell command, capturing stdout/stderr through scratch files.
inline CommandResult run_command(const std::string& cmd) {
  static std::atomic<unsigned> counter{0};
  const unsigned id = counter.fetch_add(1);
  const auto base = std::filesystem::temp_directory_path() /
                    ("toklab_cmd_" +
                     std::to_string(static_cast<long>(::getpid())) + "_" +
                     std::to_string(id));
  const std::string out_path = base.string() + ".out";
  const std::string err_path = base.string() + ".err";
  const std::string full =
      cmd + " >" + out_path + " 2>" + err_path;
  const int rc = std::system(full.c_str());
  CommandResult result;
  if (rc == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(rc)) {
    result.exit_code = WEXITSTATUS(rc);
  } else {
    result.exit_code = 128;
  }
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::error_code ec;
  std::filesystem::remove(out_path, ec);
  std::filesystem::remove(err_path, ec);
  return result;
}

// Path of the CLI under test, injected by the build.
inline std::string cli_path() {
  const char* env = std::getenv("TOKLAB_BIN");
  if (env == nullptr || *env == '\0')
    throw std::runtime_error("TOKLAB_BIN is not set");
  return env;
}

inline std::string data_dir() {
  const char* env = std::getenv("TOKLAB_DATA");
  if (env == nullptr || *env == '\0')
    throw std::runtime_error("TOKLAB_DATA is not set");
  return env;
}

}  // namespace testutil

#endif  // TOKLAB_TESTS_TESTUTIL_HPP
