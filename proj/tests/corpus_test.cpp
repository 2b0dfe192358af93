#include "toklab/corpus.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "testutil.hpp"
#include "toklab/utf8.hpp"

using toklab::Corpus;

namespace {

std::vector<std::string> words_of(std::string_view line) {
  std::vector<std::string> out;
  for (auto w : toklab::split_words(line)) out.emplace_back(w);
  return out;
}

}  // namespace

TEST_CASE("utf8 decoding accepts valid sequences") {
  auto r = toklab::utf8::decode_at("a", 0);
  CHECK(r.ok);
  CHECK(r.scalar == U'a');
  CHECK(r.length == 1);

  r = toklab::utf8::decode_at("\xC3\xA9", 0);  // é
  CHECK(r.ok);
  CHECK(r.scalar == U'é');
  CHECK(r.length == 2);

  r = toklab::utf8::decode_at("\xE3\x80\x80", 0);  // ideographic space
  CHECK(r.ok);
  CHECK(r.scalar == U'　');
  CHECK(r.length == 3);

  r = toklab::utf8::decode_at("\xF0\x9F\x99\x82", 0);  // U+1F642
  CHECK(r.ok);
  CHECK(r.scalar == char32_t{0x1F642});
  CHECK(r.length == 4);
}

TEST_CASE("utf8 decoding rejects malformed sequences") {
  CHECK_FALSE(toklab::utf8::decode_at("\xC0\xAF", 0).ok);      // overlong '/'
  CHECK_FALSE(toklab::utf8::decode_at("\xE0\x80\x80", 0).ok);  // overlong
  CHECK_FALSE(toklab::utf8::decode_at("\xED\xA0\x80", 0).ok);  // surrogate
  CHECK_FALSE(toklab::utf8::decode_at("\xF4\x90\x80\x80", 0).ok);  // >10FFFF
  CHECK_FALSE(toklab::utf8::decode_at("\xC3", 0).ok);          // truncated
  CHECK_FALSE(toklab::utf8::decode_at("\x80", 0).ok);  // stray continuation
}

TEST_CASE("utf8 find_invalid reports the first bad byte") {
  CHECK(toklab::utf8::find_invalid("plain ascii") ==
        std::string_view::npos);
  CHECK(toklab::utf8::find_invalid("caf\xC3\xA9") == std::string_view::npos);
  const std::string bad = std::string("ok") + '\xFF' + "rest";
  CHECK(toklab::utf8::find_invalid(bad) == 2);
  CHECK(toklab::utf8::find_invalid("\xED\xA0\x80") == 0);
}

TEST_CASE("utf8 split_scalars and scalar_count") {
  auto parts = toklab::utf8::split_scalars("h\xC3\xA9!");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "h");
  CHECK(parts[1] == "\xC3\xA9");
  CHECK(parts[2] == "!");
  CHECK(toklab::utf8::scalar_count("h\xC3\xA9!") == 3);
  CHECK(toklab::utf8::scalar_count("") == 0);
}

TEST_CASE("is_unicode_space covers the White_Space property") {
  CHECK(toklab::is_unicode_space(U' '));
  CHECK(toklab::is_unicode_space(U'\t'));
  CHECK(toklab::is_unicode_space(U'\n'));
  CHECK(toklab::is_unicode_space(U' '));  // no-break space
  CHECK(toklab::is_unicode_space(U''));  // next line
  CHECK(toklab::is_unicode_space(U' '));  // em space
  CHECK(toklab::is_unicode_space(U' '));  // line separator
  CHECK(toklab::is_unicode_space(U'　'));  // ideographic space
  CHECK_FALSE(toklab::is_unicode_space(U'a'));
  CHECK_FALSE(toklab::is_unicode_space(U'-'));
  CHECK_FALSE(toklab::is_unicode_space(U'​'));  // zero width space
  CHECK_FALSE(toklab::is_unicode_space(U'⁠'));  // word joiner
}

TEST_CASE("split_words handles runs of whitespace") {
  CHECK(words_of("the quick fox") ==
        std::vector<std::string>{"the", "quick", "fox"});
  CHECK(words_of("  leading\t\ttabs  and   runs ") ==
        std::vector<std::string>{"leading", "tabs", "and", "runs"});
  CHECK(words_of("") == std::vector<std::string>{});
  CHECK(words_of(" \t ") == std::vector<std::string>{});
  // NBSP and ideographic space separate words too.
  CHECK(words_of("a\xC2\xA0m\xC3\xA9t\xC3\xA9o\xE3\x80\x80ok") ==
        std::vector<std::string>{"a", "m\xC3\xA9t\xC3\xA9o", "ok"});
}

TEST_CASE("corpus_from_lines aggregates word counts") {
  Corpus c = toklab::corpus_from_lines(
      {"the cat sat", "the cat", "", "sat"});
  CHECK(c.lines.size() == 4);
  CHECK(c.total_words == 6);
  CHECK(c.word_counts.at("the") == 2);
  CHECK(c.word_counts.at("cat") == 2);
  CHECK(c.word_counts.at("sat") == 2);
  CHECK(c.word_counts.size() == 3);
}

TEST_CASE("load_corpus reads LF and CRLF text") {
  testutil::TempDir tmp("corpus");
  const auto path = tmp.path / "plain.txt";

  SUBCASE("trailing newline does not create an empty line") {
    testutil::write_file(path, "one two\nthree\n");
    Corpus c = toklab::load_corpus(path.string());
    CHECK(c.lines.size() == 2);
    CHECK(c.total_words == 3);
  }
  SUBCASE("no trailing newline") {
    testutil::write_file(path, "one two\nthree");
    Corpus c = toklab::load_corpus(path.string());
    CHECK(c.lines.size() == 2);
    CHECK(c.lines[1] == "three");
  }
  SUBCASE("CRLF endings are stripped") {
    testutil::write_file(path, "one two\r\nthree\r\n");
    Corpus c = toklab::load_corpus(path.string());
    CHECK(c.lines.size() == 2);
    CHECK(c.lines[0] == "one two");
    CHECK(c.word_counts.count("two") == 1);
    CHECK(c.word_counts.count("two\r") == 0);
  }
  SUBCASE("interior empty lines are kept") {
    testutil::write_file(path, "a\n\nb\n");
    Corpus c = toklab::load_corpus(path.string());
    CHECK(c.lines.size() == 3);
    CHECK(c.lines[1] == "");
  }
  SUBCASE("max_lines truncates") {
    testutil::write_file(path, "a\nb\nc\nd\n");
    Corpus c = toklab::load_corpus(path.string(), 2);
    CHECK(c.lines.size() == 2);
    CHECK(c.total_words == 2);
  }
}

TEST_CASE("load_corpus rejects bad input") {
  testutil::TempDir tmp("corpus_bad");

  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(
        toklab::load_corpus((tmp.path / "nope.txt").string()),
        doctest::Contains("nope.txt"), std::runtime_error);
  }
  SUBCASE("invalid UTF-8 reports the byte offset") {
    const auto path = tmp.path / "bad.txt";
    testutil::write_file(path, std::string("ok\n") + '\xFF' + "x\n");
    CHECK_THROWS_WITH_AS(toklab::load_corpus(path.string()),
                         doctest::Contains("byte offset 3"),
                         std::runtime_error);
  }
  SUBCASE("reserved marker is refused") {
    const auto path = tmp.path / "marked.txt";
    testutil::write_file(path, "token #DUP3 inside\n");
    CHECK_THROWS_WITH_AS(toklab::load_corpus(path.string()),
                         doctest::Contains("#DUP"), std::runtime_error);
  }
}

TEST_CASE("word_to_characters splits into scalar values") {
  CHECK(toklab::word_to_characters("cow") ==
        std::vector<std::string>{"c", "o", "w"});
  CHECK(toklab::word_to_characters("h\xC3\xA9") ==
        std::vector<std::string>{"h", "\xC3\xA9"});
  CHECK_THROWS_AS(toklab::word_to_characters(""), std::invalid_argument);
}
