#include "toklab/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace toklab {

namespace {

double entropy_of_count_map(
    const std::unordered_map<std::string, std::int64_t>& counts,
    double alpha) {
  std::vector<std::int64_t> values;
  values.reserve(counts.size());
  for (const auto& [token, count] : counts) values.push_back(count);
  return renyi_entropy_of_counts(values, alpha);
}

}  // namespace

DropConditionReport drop_condition(
    const std::unordered_map<std::string, std::int64_t>& counts,
    const std::string& x, const std::string& y, const std::string& z,
    double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("drop condition is stated for alpha > 1");
  }
  if (y == z) {
    throw std::invalid_argument(
        "self-pair merge (" + y + ", " + z +
        "): the count update assumes distinct operands; unsupported");
  }
  if (x == y || x == z) {
    throw std::invalid_argument("dropped token equals one of its operands");
  }
  const auto cx_it = counts.find(x);
  if (cx_it == counts.end()) {
    throw std::invalid_argument("token \"" + x + "\" is not surfaced");
  }

  DropConditionReport report;
  report.x = x;
  report.y = y;
  report.z = z;
  report.alpha = alpha;
  report.cx = cx_it->second;
  const auto count_of = [&](const std::string& t) -> std::int64_t {
    const auto it = counts.find(t);
    return it == counts.end() ? 0 : it->second;
  };
  report.cy = count_of(y);
  report.cz = count_of(z);
  for (const auto& [token, count] : counts) report.total += count;
  if (report.total < 1) {
    throw std::invalid_argument("counts are empty");
  }

  const double cx = static_cast<double>(report.cx);
  const double cy = static_cast<double>(report.cy);
  const double cz = static_cast<double>(report.cz);
  double power_sum = 0.0;
  for (const auto& [token, count] : counts) {
    if (count > 0) power_sum += std::pow(static_cast<double>(count), alpha);
  }
  if (report.cx == 0) {
    // The update is the identity, so both sides of the criterion reduce to
    // exactly 1. Computing them from the formula would pick up rounding
    // noise and could disagree with the (unchanged) entropies.
    report.lhs = 1.0;
    report.rhs = 1.0;
  } else {
    report.lhs =
        std::pow(1.0 + cx / static_cast<double>(report.total), alpha);
    report.rhs = 1.0 + (std::pow(cx + cy, alpha) + std::pow(cx + cz, alpha) -
                        std::pow(cx, alpha) - std::pow(cy, alpha) -
                        std::pow(cz, alpha)) /
                           power_sum;
  }
  report.condition_holds = report.lhs > report.rhs;

  report.entropy_before = entropy_of_count_map(counts, alpha);
  if (report.cx == 0) {
    report.entropy_after = report.entropy_before;
  } else {
    std::unordered_map<std::string, std::int64_t> updated = counts;
    updated[x] = 0;
    updated[y] = report.cx + report.cy;
    updated[z] = report.cx + report.cz;
    report.entropy_after = entropy_of_count_map(updated, alpha);
  }
  report.actual_increase = report.entropy_after > report.entropy_before;
  return report;
}

std::vector<double> duplicated_distribution(const UnigramDistribution& dist,
                                            std::string_view x,
                                            std::uint32_t k) {
  if (k < 2) {
    throw std::invalid_argument("duplication factor must be at least 2");
  }
  const double px = dist.p(x);
  if (px <= 0.0) {
    throw std::invalid_argument("token \"" + std::string(x) +
                                "\" is not in the support");
  }
  std::vector<double> out;
  out.reserve(dist.ranked.size() + k - 1);
  for (const auto& [token, count] : dist.ranked) {
    if (token == x) continue;
    out.push_back(static_cast<double>(count) /
                  static_cast<double>(dist.total));
  }
  for (std::uint32_t i = 0; i < k; ++i) {
    out.push_back(px / static_cast<double>(k));
  }
  return out;
}

double predict_duplication_shannon(const UnigramDistribution& dist,
                                   std::string_view x, std::uint32_t k) {
  if (k < 2) {
    throw std::invalid_argument("duplication factor must be at least 2");
  }
  const double px = dist.p(x);
  if (px <= 0.0) {
    throw std::invalid_argument("token \"" + std::string(x) +
                                "\" is not in the support");
  }
  return shannon_entropy(dist) + px * std::log2(static_cast<double>(k));
}

std::vector<DupRenyiCheck> check_duplication_renyi(
    const UnigramDistribution& dist, std::string_view x, std::uint32_t k,
    std::span<const double> alpha_grid) {
  const std::vector<double> before_probs = dist.prob_vector();
  const std::vector<double> after_probs = duplicated_distribution(dist, x, k);
  std::vector<DupRenyiCheck> out;
  out.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    DupRenyiCheck check;
    check.alpha = alpha;
    check.before = renyi_entropy(before_probs, alpha);
    check.after = renyi_entropy(after_probs, alpha);
    check.margin = check.after - check.before;
    check.increased = check.margin > 0.0;
    out.push_back(check);
  }
  return out;
}

namespace {

bool same_base(const Tokenizer& a, const Tokenizer& b) {
  if (a.alphabet() != b.alphabet()) return false;
  if (a.merges().size() != b.merges().size()) return false;
  for (std::size_t i = 0; i < a.merges().size(); ++i) {
    if (a.merges()[i].left != b.merges()[i].left ||
        a.merges()[i].right != b.merges()[i].right) {
      return false;
    }
  }
  return true;
}

std::string hyper_string(const TokenizerModel& model) {
  if (const auto* drop = std::get_if<RandomDropSpec>(&model.variant)) {
    return "N=" + std::to_string(drop->pool_size) +
           " k=" + std::to_string(drop->drop_count) +
           " seed=" + std::to_string(drop->seed);
  }
  if (const auto* dup = std::get_if<DuplicationSpec>(&model.variant)) {
    return "N=" + std::to_string(dup->top_count) +
           " k=" + std::to_string(dup->factor) +
           " seed=" + std::to_string(dup->seed);
  }
  if (const auto* inf = std::get_if<InflationSpec>(&model.variant)) {
    return "extra=" + std::to_string(inf->extra_tokens);
  }
  return "";
}

ComparisonRow row_for(const TokenizerModel& model, const Corpus& corpus,
                      const MetricParams& params, unsigned threads) {
  const TokenizedCorpus tokenized =
      tokenize_corpus(model, corpus, OovPolicy::kReject, threads);
  const MetricReport metrics =
      compute_metrics(tokenized, params, effective_vocab_size(model));
  ComparisonRow row;
  row.label = variant_kind(model);
  row.hyper = hyper_string(model);
  row.efficiency = metrics.efficiency;
  row.percentile = metrics.percentile;
  row.seq = metrics.seq;
  row.shannon = metrics.shannon;
  row.effective_vocab = static_cast<double>(effective_vocab_size(model));
  return row;
}

}  // namespace

ComparisonReport compare_tokenizers(const Corpus& corpus,
                                    const Tokenizer& baseline,
                                    const std::vector<TokenizerModel>& variants,
                                    const MetricParams& params,
                                    unsigned threads) {
  for (const TokenizerModel& v : variants) {
    if (!same_base(v.base, baseline)) {
      throw std::invalid_argument(
          "variant \"" + std::string(variant_kind(v)) +
          "\" does not decorate the given baseline tokenizer");
    }
  }

  ComparisonReport report;
  report.params = params;

  TokenizerModel base_model{baseline, std::monostate{}};
  ComparisonRow base_row = row_for(base_model, corpus, params, threads);
  base_row.is_baseline = true;
  report.rows.push_back(base_row);

  const auto with_deltas = [&](ComparisonRow row) {
    row.d_efficiency = row.efficiency - base_row.efficiency;
    row.d_percentile = row.percentile - base_row.percentile;
    row.d_seq = row.seq - base_row.seq;
    row.d_shannon = row.shannon - base_row.shannon;
    return row;
  };

  std::vector<ComparisonRow> drop_rows;
  for (const TokenizerModel& v : variants) {
    ComparisonRow row = with_deltas(row_for(v, corpus, params, threads));
    if (std::holds_alternative<RandomDropSpec>(v.variant)) {
      drop_rows.push_back(row);
    }
    report.rows.push_back(std::move(row));
  }

  if (drop_rows.size() >= 2) {
    ComparisonRow mean;
    mean.label = "overall";
    mean.hyper = "mean of " + std::to_string(drop_rows.size()) + " seeds";
    mean.is_aggregate = true;
    const ComparisonRow* best = &drop_rows.front();
    for (const ComparisonRow& row : drop_rows) {
      mean.efficiency += row.efficiency;
      mean.percentile += row.percentile;
      mean.seq += row.seq;
      mean.shannon += row.shannon;
      mean.effective_vocab += row.effective_vocab;
      if (row.efficiency > best->efficiency) best = &row;
    }
    const double n = static_cast<double>(drop_rows.size());
    mean.efficiency /= n;
    mean.percentile /= n;
    mean.seq /= n;
    mean.shannon /= n;
    mean.effective_vocab /= n;
    report.rows.push_back(with_deltas(std::move(mean)));

    ComparisonRow best_row = *best;
    best_row.label = "best";
    best_row.is_aggregate = true;
    report.rows.push_back(std::move(best_row));
  }

  return report;
}

}  // namespace toklab
