#ifndef TOKLAB_CORPUS_HPP
#define TOKLAB_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace toklab {

// Raw text split into lines and whitespace-delimited words. Immutable once
// built; safe to share across threads.
struct Corpus {
  std::vector<std::string> lines;
  std::unordered_map<std::string, std::int64_t> word_counts;
  std::int64_t total_words = 0;
};

// Marker reserved for rendering duplicated tokens (see variants.hpp). Raw
// corpora containing it are rejected on load so rendered output stays
// unambiguous.
inline constexpr std::string_view kDupMarker = "#DUP";

// True for scalars with the Unicode White_Space property.
bool is_unicode_space(char32_t c);

// Splits one line into words: maximal runs of non-whitespace scalars.
std::vector<std::string_view> split_words(std::string_view line);

// Builds a Corpus from already-split lines (no UTF-8 or marker checks; the
// lines are assumed to have come through load_corpus or test fixtures).
Corpus corpus_from_lines(std::vector<std::string> lines);

// Reads a UTF-8 text file. LF and CRLF line endings are accepted (CR is
// stripped). Throws std::runtime_error on I/O failure, on invalid UTF-8
// (message carries the byte offset), or if the text contains kDupMarker.
Corpus load_corpus(const std::string& path,
                   std::optional<std::int64_t> max_lines = std::nullopt);

// Splits a word into its Unicode scalar values, one string per scalar.
std::vector<std::string> word_to_characters(std::string_view word);

}  // namespace toklab

#endif  // TOKLAB_CORPUS_HPP
