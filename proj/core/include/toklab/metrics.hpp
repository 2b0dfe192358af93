#ifndef TOKLAB_METRICS_HPP
#define TOKLAB_METRICS_HPP

// Intrinsic tokenization metrics: unigram distribution, Shannon and Rényi
// entropy (always in bits), Rényi efficiency, percentile frequency mass, and
// mean tokens per line. All pure functions over immutable inputs.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "toklab/bpe.hpp"

namespace toklab {

enum class Accounting {
  kSurfacedOnly,  // support = tokens with count >= 1
  kFullVocab,     // support = effective vocabulary size
};

enum class EffConvention {
  kConsistent,  // H and the denominator share base 2; uniform scores 1
  kPaperTable,  // H in bits over the natural log of the support
};

struct UnigramDistribution {
  // Surfaced tokens ranked by descending count, ties lexicographic.
  std::vector<std::pair<std::string, std::int64_t>> ranked;
  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  std::size_t support_size = 0;
  Accounting accounting = Accounting::kSurfacedOnly;

  double p(std::string_view token) const;
  // Surfaced probabilities in rank order.
  std::vector<double> prob_vector() const;
};

// full_vocab_size is consulted only under full-vocab accounting and must be
// at least the surfaced token count.
UnigramDistribution distribution_from_counts(
    const std::unordered_map<std::string, std::int64_t>& token_counts,
    Accounting accounting = Accounting::kSurfacedOnly,
    std::size_t full_vocab_size = 0);

UnigramDistribution unigram_distribution(
    const TokenizedCorpus& tokenized,
    Accounting accounting = Accounting::kSurfacedOnly,
    std::size_t full_vocab_size = 0);

// -sum p log2 p over the nonzero entries.
double shannon_entropy(std::span<const double> probs);
double shannon_entropy(const UnigramDistribution& dist);

// (1/(1-alpha)) log2 sum p^alpha for alpha != 1; the Shannon limit at
// alpha == 1. Requires alpha > 0.
double renyi_entropy(std::span<const double> probs, double alpha);
double renyi_entropy(const UnigramDistribution& dist, double alpha);

// Entropy over the implied distribution c/T of a raw count vector.
double renyi_entropy_of_counts(std::span<const std::int64_t> counts,
                               double alpha);

double renyi_efficiency(std::span<const double> probs, double alpha,
                        std::size_t support_size,
                        EffConvention convention = EffConvention::kConsistent);
double renyi_efficiency(const UnigramDistribution& dist, double alpha,
                        EffConvention convention = EffConvention::kConsistent);

// Probability mass of the tokens whose 1-based descending-frequency rank j
// satisfies gamma1*n < j <= gamma2*n, with n = support_size.
double percentile_freq(const UnigramDistribution& dist, double gamma1,
                       double gamma2);

double tokens_per_line(const TokenizedCorpus& tokenized);

struct MetricParams {
  double alpha = 3.0;
  double gamma1 = 0.03;
  double gamma2 = 0.83;
  Accounting accounting = Accounting::kSurfacedOnly;
  EffConvention convention = EffConvention::kConsistent;
};

struct MetricReport {
  double shannon = 0.0;          // bits
  double renyi = 0.0;            // bits, at params.alpha
  double efficiency = 0.0;
  double percentile = 0.0;
  double seq = 0.0;              // tokens per line
  std::size_t support_size = 0;  // efficiency denominator argument
  std::int64_t total_tokens = 0;
  MetricParams params;
};

// full_vocab_size: the producing model's effective vocabulary, used only
// under full-vocab accounting.
MetricReport compute_metrics(const TokenizedCorpus& tokenized,
                             const MetricParams& params,
                             std::size_t full_vocab_size = 0);

}  // namespace toklab

#endif  // TOKLAB_METRICS_HPP
