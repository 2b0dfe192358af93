#include "toklab/analysis.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctest.h"
#include "testutil.hpp"
#include "toklab/rng.hpp"

using toklab::DropConditionReport;
using toklab::UnigramDistribution;

namespace {

bool near(double value, double expect, double tol) {
  return std::abs(value - expect) <= tol;
}

UnigramDistribution dist_of(
    const std::unordered_map<std::string, std::int64_t>& counts) {
  return toklab::distribution_from_counts(counts);
}

std::unordered_map<std::string, std::int64_t> random_counts(
    toklab::SplitMix64& rng, std::size_t max_vocab, std::int64_t max_count) {
  const std::size_t n = 2 + rng.below(max_vocab - 1);
  std::unordered_map<std::string, std::int64_t> counts;
  for (std::size_t i = 0; i < n; ++i) {
    counts["t" + std::to_string(i)] =
        1 + static_cast<std::int64_t>(rng.below(max_count));
  }
  return counts;
}

}  // namespace

TEST_CASE("drop condition on a worked example") {
  // x = yz with c(x)=4, c(y)=c(z)=1, one bystander of count 4; alpha = 3.
  const std::unordered_map<std::string, std::int64_t> counts = {
      {"x", 4}, {"y", 1}, {"z", 1}, {"w", 4}};
  DropConditionReport r = toklab::drop_condition(counts, "x", "y", "z", 3.0);

  CHECK(r.cx == 4);
  CHECK(r.cy == 1);
  CHECK(r.cz == 1);
  CHECK(r.total == 10);
  CHECK(near(r.lhs, 2.744, 1e-9));  // (1 + 0.4)^3
  CHECK(near(r.rhs, 2.415384615385, 1e-9));
  CHECK(r.condition_holds);
  CHECK(near(r.entropy_before, 1.471708235817, 1e-9));
  CHECK(near(r.entropy_after, 1.563722008641, 1e-9));
  CHECK(r.actual_increase);
}

TEST_CASE("drop condition validates its inputs") {
  const std::unordered_map<std::string, std::int64_t> counts = {
      {"x", 4}, {"y", 1}, {"z", 1}};
  CHECK_THROWS_AS(toklab::drop_condition(counts, "x", "y", "z", 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(toklab::drop_condition(counts, "x", "y", "z", 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(toklab::drop_condition(counts, "x", "y", "y", 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(toklab::drop_condition(counts, "x", "x", "z", 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(toklab::drop_condition(counts, "absent", "y", "z", 2.0),
                  std::invalid_argument);
}

TEST_CASE("drop condition degenerates to the identity at zero count") {
  const std::unordered_map<std::string, std::int64_t> counts = {
      {"x", 0}, {"y", 3}, {"z", 2}, {"w", 5}};
  DropConditionReport r = toklab::drop_condition(counts, "x", "y", "z", 2.0);
  CHECK(near(r.lhs, 1.0, 1e-15));
  CHECK(near(r.rhs, 1.0, 1e-15));
  CHECK_FALSE(r.condition_holds);
  CHECK(r.entropy_after == r.entropy_before);
  CHECK_FALSE(r.actual_increase);
}

TEST_CASE("closed-form drop verdict equals direct recomputation") {
  // Randomized equivalence sweep; mirrors the larger acceptance suite.
  toklab::SplitMix64 rng(424242);
  const double alphas[] = {1.5, 2.0, 3.0, 5.0};
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto counts = random_counts(rng, 8, 20);
    counts["x"] = static_cast<std::int64_t>(rng.below(21));
    counts["y"] = static_cast<std::int64_t>(rng.below(21));
    counts["z"] = static_cast<std::int64_t>(rng.below(21));
    if (counts["x"] + counts["y"] + counts["z"] == 0) counts["y"] = 1;
    const double alpha = alphas[rng.below(4)];
    DropConditionReport r =
        toklab::drop_condition(counts, "x", "y", "z", alpha);
    CAPTURE(i);
    CAPTURE(alpha);
    CHECK(r.condition_holds == r.actual_increase);
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("duplicated_distribution splits one token's mass") {
  UnigramDistribution dist =
      dist_of({{"a", 4}, {"b", 3}, {"c", 2}, {"d", 1}});
  const std::vector<double> after =
      toklab::duplicated_distribution(dist, "a", 2);
  REQUIRE(after.size() == 5);
  double total = 0.0;
  int pieces = 0;
  for (double p : after) {
    total += p;
    if (near(p, 0.2, 1e-15)) ++pieces;
  }
  CHECK(near(total, 1.0, 1e-12));
  CHECK(pieces >= 3);  // the two 0.2 duplicates plus the original 0.2 token

  CHECK_THROWS_AS(toklab::duplicated_distribution(dist, "a", 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(toklab::duplicated_distribution(dist, "nope", 2),
                  std::invalid_argument);
}

TEST_CASE("duplication shannon prediction is exact") {
  UnigramDistribution dist =
      dist_of({{"a", 4}, {"b", 3}, {"c", 2}, {"d", 1}});

  SUBCASE("frozen example values") {
    // H + p(a) log2 k for k = 2 and k = 10.
    CHECK(near(toklab::predict_duplication_shannon(dist, "a", 2),
               2.246439345, 1e-8));
    CHECK(near(toklab::predict_duplication_shannon(dist, "a", 10),
               3.175210583, 1e-8));

    UnigramDistribution fair = dist_of({{"h", 1}, {"t", 1}});
    CHECK(near(toklab::predict_duplication_shannon(fair, "h", 2), 1.5,
               1e-12));
  }
  SUBCASE("prediction equals recomputation on random distributions") {
    toklab::SplitMix64 rng(616);
    for (int i = 0; i < 400; ++i) {
      auto counts = random_counts(rng, 12, 200);
      UnigramDistribution d = toklab::distribution_from_counts(counts);
      const auto& target =
          d.ranked[rng.below(d.ranked.size())].first;
      const auto k = static_cast<std::uint32_t>(2 + rng.below(9));
      const double predicted =
          toklab::predict_duplication_shannon(d, target, k);
      const double recomputed = toklab::shannon_entropy(
          toklab::duplicated_distribution(d, target, k));
      CAPTURE(i);
      CHECK(near(predicted, recomputed, 1e-9));
    }
  }
}

TEST_CASE("renyi entropy strictly increases under duplication") {
  UnigramDistribution dist =
      dist_of({{"a", 4}, {"b", 3}, {"c", 2}, {"d", 1}});

  SUBCASE("matches the frozen example at selected orders") {
    auto checks = toklab::check_duplication_renyi(dist, "a", 2);
    REQUIRE(checks.size() == toklab::kAlphaGrid.size());
    for (const auto& c : checks) {
      CHECK(c.increased);
      CHECK(c.margin > 0.0);
      if (c.alpha == 3.0) {
        CHECK(near(c.before, 1.660964047, 1e-8));
        CHECK(near(c.after, 2.132672283, 1e-8));
      }
      if (c.alpha == 1.0) {
        CHECK(near(c.after - c.before, 0.4, 1e-12));  // p(a) * log2 2
      }
    }
    auto k10 = toklab::check_duplication_renyi(dist, "a", 10);
    for (const auto& c : k10) {
      if (c.alpha == 0.5) CHECK(near(c.after, 3.454676866, 1e-8));
    }
  }
  SUBCASE("strict on random distributions over the whole grid") {
    toklab::SplitMix64 rng(31337);
    for (int i = 0; i < 250; ++i) {
      auto counts = random_counts(rng, 10, 100);
      UnigramDistribution d = toklab::distribution_from_counts(counts);
      const auto& target = d.ranked[rng.below(d.ranked.size())].first;
      const auto k = static_cast<std::uint32_t>(2 + rng.below(9));
      for (const auto& c : toklab::check_duplication_renyi(d, target, k)) {
        CAPTURE(i);
        CAPTURE(c.alpha);
        CHECK(c.margin > 0.0);
        CHECK(c.increased);
      }
    }
  }
}

TEST_CASE("compare_tokenizers lines up baseline and variants") {
  toklab::Corpus corpus = testutil::random_corpus(99, 120, 6, "abcd", 1, 10);
  toklab::Tokenizer base = toklab::train_bpe(corpus, 30);
  toklab::TokenizedCorpus tc = toklab::tokenize_corpus(base, corpus);

  std::vector<toklab::TokenizerModel> variants;
  for (std::uint64_t seed : {1, 2, 3}) {
    variants.push_back(
        {base, toklab::select_drop_set(tc, base, 20, 5, seed)});
  }
  variants.push_back(
      {base, toklab::select_duplication_set(tc, 4, 3, 7)});
  variants.push_back({base, toklab::inflate_vocab(base, 50)});

  toklab::MetricParams params;
  toklab::ComparisonReport report =
      toklab::compare_tokenizers(corpus, base, variants, params, 2);

  // baseline + 5 variants + overall + best.
  REQUIRE(report.rows.size() == 8);
  CHECK(report.rows[0].label == "baseline");
  CHECK(report.rows[0].is_baseline);
  CHECK(report.rows[0].d_efficiency == 0.0);
  CHECK(report.rows[1].label == "random_drop");
  CHECK(report.rows[1].hyper == "N=20 k=5 seed=1");
  CHECK(report.rows[4].label == "duplication");
  CHECK(report.rows[5].label == "inflate");

  const toklab::ComparisonRow& overall = report.rows[6];
  CHECK(overall.label == "overall");
  CHECK(overall.is_aggregate);
  const double mean_eff = (report.rows[1].efficiency +
                           report.rows[2].efficiency +
                           report.rows[3].efficiency) /
                          3.0;
  CHECK(near(overall.efficiency, mean_eff, 1e-12));
  CHECK(near(overall.d_efficiency,
             mean_eff - report.rows[0].efficiency, 1e-12));

  const toklab::ComparisonRow& best = report.rows[7];
  CHECK(best.label == "best");
  CHECK(best.is_aggregate);
  double max_eff = report.rows[1].efficiency;
  for (int i = 2; i <= 3; ++i)
    max_eff = std::max(max_eff, report.rows[i].efficiency);
  CHECK(best.efficiency == max_eff);

  // Deltas are relative to the baseline row.
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(near(report.rows[i].d_seq,
               report.rows[i].seq - report.rows[0].seq, 1e-12));
  }

  // Duplication never changes sequence length; inflation changes nothing
  // but the vocabulary accounting.
  CHECK(report.rows[4].d_seq == 0.0);
  CHECK(report.rows[5].d_seq == 0.0);
  CHECK(report.rows[5].d_shannon == 0.0);
  CHECK(report.rows[5].effective_vocab ==
        static_cast<double>(base.vocab_size() + 50));
}

TEST_CASE("compare_tokenizers with only a baseline emits one row") {
  toklab::Corpus corpus = toklab::corpus_from_lines({"ab ab a b"});
  toklab::Tokenizer base({"a", "b"}, {toklab::Merge{"a", "b", "ab", 0}});
  toklab::ComparisonReport report =
      toklab::compare_tokenizers(corpus, base, {}, toklab::MetricParams{});
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].is_baseline);
}

TEST_CASE("compare_tokenizers rejects variants of a different baseline") {
  toklab::Corpus corpus = toklab::corpus_from_lines({"ab ab a b"});
  toklab::Tokenizer base({"a", "b"}, {toklab::Merge{"a", "b", "ab", 0}});
  toklab::Tokenizer other({"a", "b"}, {});
  std::vector<toklab::TokenizerModel> variants = {
      {other, toklab::inflate_vocab(other, 3)}};
  CHECK_THROWS_AS(
      toklab::compare_tokenizers(corpus, base, variants,
                                 toklab::MetricParams{}),
      std::invalid_argument);
}
