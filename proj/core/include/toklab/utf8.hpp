#ifndef TOKLAB_UTF8_HPP
#define TOKLAB_UTF8_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toklab::utf8 {

struct DecodeResult {
  char32_t scalar;
  std::size_t length;  // bytes consumed
  bool ok;
};

// Decodes one scalar value starting at data[pos]. Rejects overlong forms,
// surrogates and values beyond U+10FFFF.
DecodeResult decode_at(std::string_view data, std::size_t pos);

// Byte offset of the first invalid sequence, or npos if the input is valid.
std::size_t find_invalid(std::string_view data);

// Splits a valid UTF-8 string into one std::string per scalar value.
std::vector<std::string> split_scalars(std::string_view word);

// Number of scalar values in a valid UTF-8 string.
std::size_t scalar_count(std::string_view s);

}  // namespace toklab::utf8

#endif  // TOKLAB_UTF8_HPP
