#include "toklab/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "toklab/utf8.hpp"

namespace toklab {

bool is_unicode_space(char32_t c) {
  switch (c) {
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case U' ':
    case U'':
    case U' ':
    case U' ':
    case U' ':
    case U' ':
    case U' ':
    case U' ':
    case U'　':
      return true;
    default:
      return c >= U' ' && c <= U' ';
  }
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;
  while (pos < line.size()) {
    const auto r = utf8::decode_at(line, pos);
    const std::size_t len = r.ok ? r.length : 1;
    const bool space = r.ok && is_unicode_space(r.scalar);
    if (space) {
      if (word_start != std::string_view::npos) {
        words.push_back(line.substr(word_start, pos - word_start));
        word_start = std::string_view::npos;
      }
    } else if (word_start == std::string_view::npos) {
      word_start = pos;
    }
    pos += len;
  }
  if (word_start != std::string_view::npos) {
    words.push_back(line.substr(word_start));
  }
  return words;
}

Corpus corpus_from_lines(std::vector<std::string> lines) {
  Corpus corpus;
  corpus.lines = std::move(lines);
  for (const std::string& line : corpus.lines) {
    for (std::string_view w : split_words(line)) {
      ++corpus.word_counts[std::string(w)];
      ++corpus.total_words;
    }
  }
  return corpus;
}

Corpus load_corpus(const std::string& path,
                   std::optional<std::int64_t> max_lines) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open corpus file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw std::runtime_error("I/O error while reading: " + path);
  }
  const std::string data = buf.str();

  const std::size_t bad = utf8::find_invalid(data);
  if (bad != std::string_view::npos) {
    throw std::runtime_error("invalid UTF-8 in " + path + " at byte offset " +
                             std::to_string(bad));
  }
  if (data.find(kDupMarker) != std::string::npos) {
    throw std::runtime_error("corpus " + path +
                             " contains the reserved marker \"" +
                             std::string(kDupMarker) + "\"");
  }

  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= data.size()) {
    if (pos == data.size()) {
      break;  // no trailing empty line after a final newline
    }
    std::size_t nl = data.find('\n', pos);
    std::size_t end = (nl == std::string::npos) ? data.size() : nl;
    std::size_t len = end - pos;
    if (len > 0 && data[pos + len - 1] == '\r') --len;  // CRLF
    if (max_lines && static_cast<std::int64_t>(lines.size()) >= *max_lines) {
      break;
    }
    lines.emplace_back(data.substr(pos, len));
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return corpus_from_lines(std::move(lines));
}

std::vector<std::string> word_to_characters(std::string_view word) {
  if (word.empty()) {
    throw std::invalid_argument("word_to_characters: empty word");
  }
  return utf8::split_scalars(word);
}

}  // namespace toklab
