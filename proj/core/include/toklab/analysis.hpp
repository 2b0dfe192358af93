#ifndef TOKLAB_ANALYSIS_HPP
#define TOKLAB_ANALYSIS_HPP

// Closed-form predictions about entropy changes under token drops and
// duplications, each paired with a direct recomputation so the two can be
// checked against each other, plus the baseline-vs-variant comparison table.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "toklab/metrics.hpp"
#include "toklab/model.hpp"

namespace toklab {

// Orders used by the duplication strictness check: both sides of 1, the
// boundary itself, and a spread of larger orders.
inline constexpr std::array<double, 9> kAlphaGrid = {
    0.25, 0.5, 0.99, 1.0, 1.01, 2.0, 2.7, 3.0, 5.0};

struct DropConditionReport {
  std::string x, y, z;
  std::int64_t cx = 0, cy = 0, cz = 0;
  std::int64_t total = 0;
  double alpha = 0.0;
  double lhs = 0.0;  // (1 + c(x)/T)^alpha
  double rhs = 0.0;
  bool condition_holds = false;
  double entropy_before = 0.0;  // bits
  double entropy_after = 0.0;
  bool actual_increase = false;
};

// Decides whether decomposing token x = (y, z) everywhere raises the
// order-alpha entropy, both via the closed-form inequality and by direct
// recomputation from the updated counts c'(y) = c(x)+c(y),
// c'(z) = c(x)+c(z), c'(x) = 0. Requires alpha > 1, distinct y and z, and
// x present in the counts (a zero count degenerates to the identity).
DropConditionReport drop_condition(
    const std::unordered_map<std::string, std::int64_t>& counts,
    const std::string& x, const std::string& y, const std::string& z,
    double alpha);

// Probabilities after splitting x's mass into k equal duplicates.
std::vector<double> duplicated_distribution(const UnigramDistribution& dist,
                                            std::string_view x,
                                            std::uint32_t k);

// Shannon entropy predicted for the duplicated distribution:
// H + p(x) * log2 k. Must match recomputation to ~1e-9.
double predict_duplication_shannon(const UnigramDistribution& dist,
                                   std::string_view x, std::uint32_t k);

struct DupRenyiCheck {
  double alpha = 0.0;
  double before = 0.0;  // bits
  double after = 0.0;
  double margin = 0.0;  // after - before
  bool increased = false;
};

// Recomputes H_alpha after duplication for every order in the grid; the
// margin must be strictly positive for all alpha > 0 and k >= 2.
std::vector<DupRenyiCheck> check_duplication_renyi(
    const UnigramDistribution& dist, std::string_view x, std::uint32_t k,
    std::span<const double> alpha_grid = kAlphaGrid);

struct ComparisonRow {
  std::string label;   // baseline | random_drop | duplication | inflate |
                       // overall | best
  std::string hyper;   // e.g. "N=2000 k=500 seed=1"
  double efficiency = 0.0;
  double percentile = 0.0;
  double seq = 0.0;
  double shannon = 0.0;
  double effective_vocab = 0.0;  // mean rows can be fractional
  double d_efficiency = 0.0;     // deltas against the baseline row
  double d_percentile = 0.0;
  double d_seq = 0.0;
  double d_shannon = 0.0;
  bool is_baseline = false;
  bool is_aggregate = false;  // overall / best rows
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  MetricParams params;
};

// Tokenizes the corpus under the baseline and every variant with identical
// metric parameters. With two or more random-drop variants, appends their
// mean row ("overall") and the row with the best efficiency ("best").
// Every variant must share the baseline's alphabet and merge list.
ComparisonReport compare_tokenizers(const Corpus& corpus,
                                    const Tokenizer& baseline,
                                    const std::vector<TokenizerModel>& variants,
                                    const MetricParams& params,
                                    unsigned threads = 1);

}  // namespace toklab

#endif  // TOKLAB_ANALYSIS_HPP
