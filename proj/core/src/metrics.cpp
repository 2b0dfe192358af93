#include "toklab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toklab {

double UnigramDistribution::p(std::string_view token) const {
  const auto it = counts.find(std::string(token));
  if (it == counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

std::vector<double> UnigramDistribution::prob_vector() const {
  std::vector<double> out;
  out.reserve(ranked.size());
  for (const auto& [token, count] : ranked) {
    out.push_back(static_cast<double>(count) / static_cast<double>(total));
  }
  return out;
}

UnigramDistribution distribution_from_counts(
    const std::unordered_map<std::string, std::int64_t>& token_counts,
    Accounting accounting, std::size_t full_vocab_size) {
  UnigramDistribution dist;
  dist.accounting = accounting;
  for (const auto& [token, count] : token_counts) {
    if (count < 0) {
      throw std::invalid_argument("negative count for token \"" + token +
                                  "\"");
    }
    if (count == 0) continue;  // unsurfaced
    dist.ranked.emplace_back(token, count);
    dist.counts.emplace(token, count);
    dist.total += count;
  }
  if (dist.total < 1) {
    throw std::invalid_argument("distribution over an empty tokenization");
  }
  std::sort(dist.ranked.begin(), dist.ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (accounting == Accounting::kFullVocab) {
    if (full_vocab_size < dist.ranked.size()) {
      throw std::invalid_argument(
          "full-vocab accounting: vocabulary size " +
          std::to_string(full_vocab_size) + " is below the " +
          std::to_string(dist.ranked.size()) + " surfaced tokens");
    }
    dist.support_size = full_vocab_size;
  } else {
    dist.support_size = dist.ranked.size();
  }
  return dist;
}

UnigramDistribution unigram_distribution(const TokenizedCorpus& tokenized,
                                         Accounting accounting,
                                         std::size_t full_vocab_size) {
  return distribution_from_counts(tokenized.token_counts, accounting,
                                  full_vocab_size);
}

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (const double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double shannon_entropy(const UnigramDistribution& dist) {
  const std::vector<double> probs = dist.prob_vector();
  return shannon_entropy(probs);
}

double renyi_entropy(std::span<const double> probs, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("entropy order must be positive");
  }
  if (alpha == 1.0) return shannon_entropy(probs);
  double sum = 0.0;
  for (const double p : probs) {
    if (p > 0.0) sum += std::pow(p, alpha);
  }
  return std::log2(sum) / (1.0 - alpha);
}

double renyi_entropy(const UnigramDistribution& dist, double alpha) {
  const std::vector<double> probs = dist.prob_vector();
  return renyi_entropy(probs, alpha);
}

double renyi_entropy_of_counts(std::span<const std::int64_t> counts,
                               double alpha) {
  std::int64_t total = 0;
  for (const std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("negative count");
    total += c;
  }
  if (total < 1) throw std::invalid_argument("all counts are zero");
  std::vector<double> probs;
  probs.reserve(counts.size());
  for (const std::int64_t c : counts) {
    if (c > 0) {
      probs.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
  }
  return renyi_entropy(probs, alpha);
}

double renyi_efficiency(std::span<const double> probs, double alpha,
                        std::size_t support_size, EffConvention convention) {
  if (support_size < 2) {
    throw std::invalid_argument("efficiency needs a support of at least 2");
  }
  const double h = renyi_entropy(probs, alpha);
  const double n = static_cast<double>(support_size);
  if (convention == EffConvention::kPaperTable) return h / std::log(n);
  return h / std::log2(n);
}

double renyi_efficiency(const UnigramDistribution& dist, double alpha,
                        EffConvention convention) {
  const std::vector<double> probs = dist.prob_vector();
  return renyi_efficiency(probs, alpha, dist.support_size, convention);
}

double percentile_freq(const UnigramDistribution& dist, double gamma1,
                       double gamma2) {
  if (!(gamma1 >= 0.0) || !(gamma1 < gamma2) || !(gamma2 <= 1.0)) {
    throw std::invalid_argument("percentile bounds need 0 <= g1 < g2 <= 1");
  }
  const double n = static_cast<double>(dist.support_size);
  std::int64_t band = 0;
  for (std::size_t i = 0; i < dist.ranked.size(); ++i) {
    const double j = static_cast<double>(i + 1);  // 1-based rank
    if (j > gamma1 * n && j <= gamma2 * n) band += dist.ranked[i].second;
  }
  return static_cast<double>(band) / static_cast<double>(dist.total);
}

double tokens_per_line(const TokenizedCorpus& tokenized) {
  if (tokenized.source_line_count < 1) {
    throw std::invalid_argument("tokens_per_line: no lines");
  }
  return static_cast<double>(tokenized.total_tokens) /
         static_cast<double>(tokenized.source_line_count);
}

MetricReport compute_metrics(const TokenizedCorpus& tokenized,
                             const MetricParams& params,
                             std::size_t full_vocab_size) {
  const UnigramDistribution dist =
      unigram_distribution(tokenized, params.accounting, full_vocab_size);
  const std::vector<double> probs = dist.prob_vector();

  MetricReport report;
  report.params = params;
  report.shannon = shannon_entropy(probs);
  report.renyi = renyi_entropy(probs, params.alpha);
  report.efficiency = renyi_efficiency(probs, params.alpha, dist.support_size,
                                       params.convention);
  report.percentile = percentile_freq(dist, params.gamma1, params.gamma2);
  report.seq = tokens_per_line(tokenized);
  report.support_size = dist.support_size;
  report.total_tokens = tokenized.total_tokens;
  return report;
}

}  // namespace toklab
