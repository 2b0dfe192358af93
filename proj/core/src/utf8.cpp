#include "toklab/utf8.hpp"

namespace toklab::utf8 {

DecodeResult decode_at(std::string_view data, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<std::uint8_t>(data[i]);
  };
  const std::uint8_t b0 = byte(pos);
  if (b0 < 0x80) return {b0, 1, true};

  std::size_t len = 0;
  char32_t value = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    value = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    value = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    value = b0 & 0x07;
  } else {
    return {0, 0, false};
  }
  if (pos + len > data.size()) return {0, 0, false};
  for (std::size_t i = 1; i < len; ++i) {
    const std::uint8_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return {0, 0, false};
    value = (value << 6) | (b & 0x3F);
  }
  // Overlong encodings and out-of-range values.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (value < kMin[len]) return {0, 0, false};
  if (value > 0x10FFFF) return {0, 0, false};
  if (value >= 0xD800 && value <= 0xDFFF) return {0, 0, false};
  return {value, len, true};
}

std::size_t find_invalid(std::string_view data) {
  std::size_t pos = 0;
  while (pos < data.size()) {
    const DecodeResult r = decode_at(data, pos);
    if (!r.ok) return pos;
    pos += r.length;
  }
  return std::string_view::npos;
}

std::vector<std::string> split_scalars(std::string_view word) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const DecodeResult r = decode_at(word, pos);
    const std::size_t len = r.ok ? r.length : 1;
    out.emplace_back(word.substr(pos, len));
    pos += len;
  }
  return out;
}

std::size_t scalar_count(std::string_view s) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const DecodeResult r = decode_at(s, pos);
    pos += r.ok ? r.length : 1;
    ++n;
  }
  return n;
}

}  // namespace toklab::utf8
