// Command-line front end: train / tokenize / variant / score / compare /
// verify over the model and corpus file formats.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "toklab/analysis.hpp"
#include "toklab/bpe.hpp"
#include "toklab/corpus.hpp"
#include "toklab/metrics.hpp"
#include "toklab/model.hpp"
#include "toklab/model_io.hpp"
#include "toklab/report.hpp"
#include "toklab/rng.hpp"
#include "toklab/variants.hpp"

using nlohmann::ordered_json;
using namespace toklab;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;
constexpr int kDataError = 3;

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("bad seed \"" + item + "\"");
    }
    seeds.push_back(value);
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds given");
  return seeds;
}

std::pair<double, double> parse_percentiles(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument(
        "percentiles must be two comma-separated numbers, e.g. 0.03,0.83");
  }
  std::size_t used = 0;
  const double g1 = std::stod(text.substr(0, comma), &used);
  const double g2 = std::stod(text.substr(comma + 1));
  return {g1, g2};
}

OovPolicy parse_oov(const std::string& name) {
  if (name == "reject") return OovPolicy::kReject;
  if (name == "pass") return OovPolicy::kPassThrough;
  throw std::invalid_argument("unknown OOV policy \"" + name +
                              "\" (expected reject|pass)");
}

// Concatenates several corpus files, mirroring a `cat a b | score` run.
Corpus load_concatenated(const std::vector<std::string>& paths,
                         std::optional<std::int64_t> max_lines) {
  std::vector<std::string> lines;
  for (const std::string& path : paths) {
    std::optional<std::int64_t> remaining;
    if (max_lines) {
      const std::int64_t left =
          *max_lines - static_cast<std::int64_t>(lines.size());
      if (left <= 0) break;
      remaining = left;
    }
    Corpus part = load_corpus(path, remaining);
    for (std::string& line : part.lines) lines.push_back(std::move(line));
  }
  return corpus_from_lines(std::move(lines));
}

std::string fmt_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", value);
  return buf;
}

// Every artifact embeds the fully resolved run configuration.
std::string config_comment_block(const ordered_json& config) {
  std::string out;
  for (const auto& [key, value] : config.items()) {
    out += "# " + key + ": ";
    out += value.is_string() ? value.get<std::string>() : value.dump();
    out += '\n';
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    save_text(text, out_path);
  }
}

// ---------------------------------------------------------------------------
// train

struct TrainOpts {
  std::string corpus_path;
  std::string out_path;
  std::size_t num_merges = 0;
  std::int64_t max_lines = -1;
};

int run_train(const TrainOpts& opts) {
  std::optional<std::int64_t> cap;
  if (opts.max_lines >= 0) cap = opts.max_lines;
  const Corpus corpus = load_corpus(opts.corpus_path, cap);
  const Tokenizer tokenizer = train_bpe(corpus, opts.num_merges);

  TokenizerModel model{tokenizer, std::monostate{}};
  ordered_json j = model_to_json(model);
  ordered_json config;
  config["command"] = "train";
  config["corpus"] = opts.corpus_path;
  config["merges_requested"] = opts.num_merges;
  config["merges_trained"] = tokenizer.merges().size();
  config["max_lines"] = opts.max_lines;
  j["config"] = std::move(config);
  save_json(j, opts.out_path);

  std::cerr << "trained " << tokenizer.merges().size() << " merges, |V|="
            << tokenizer.vocab_size() << " -> " << opts.out_path << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// tokenize

struct TokenizeOpts {
  std::string model_path;
  std::string corpus_path;
  std::string out_path;
  std::string oov = "reject";
  std::int64_t max_lines = -1;
  unsigned threads = 1;
};

int run_tokenize(const TokenizeOpts& opts) {
  const TokenizerModel model = load_model(opts.model_path);
  std::optional<std::int64_t> cap;
  if (opts.max_lines >= 0) cap = opts.max_lines;
  const Corpus corpus = load_corpus(opts.corpus_path, cap);
  const std::vector<std::string> lines =
      render_corpus_lines(model, corpus, parse_oov(opts.oov), opts.threads);

  std::string text;
  for (const std::string& line : lines) {
    text += line;
    text += '\n';
  }
  emit(text, opts.out_path);
  // The output format is one line per input line, so the config echo goes to
  // stderr instead of the artifact.
  ordered_json config;
  config["command"] = "tokenize";
  config["model"] = opts.model_path;
  config["corpus"] = opts.corpus_path;
  config["variant"] = variant_kind(model);
  config["oov"] = opts.oov;
  config["max_lines"] = opts.max_lines;
  config["threads"] = opts.threads;
  std::cerr << config_comment_block(config);
  return kOk;
}

// ---------------------------------------------------------------------------
// variant

struct VariantOpts {
  std::string model_path;
  std::string corpus_path;
  std::string out_path;
  std::string kind;
  std::string seeds = "1";
  std::size_t pool = 0;
  std::size_t count = 0;
  std::int64_t extra = -1;
  std::int64_t max_lines = -1;
  unsigned threads = 1;
};

std::string seeded_path(const std::string& path, std::uint64_t seed,
                        bool multiple) {
  if (!multiple) return path;
  const std::string suffix = ".json";
  const std::string tag = ".seed" + std::to_string(seed);
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size()) + tag + suffix;
  }
  return path + tag;
}

int run_variant(const VariantOpts& opts) {
  const TokenizerModel base_model = load_model(opts.model_path);
  if (!std::holds_alternative<std::monostate>(base_model.variant)) {
    throw std::invalid_argument(
        "base model already carries a variant; start from a plain model");
  }
  const Tokenizer& base = base_model.base;

  const auto save_variant = [&](VariantSpec spec, const std::string& path,
                                std::optional<std::uint64_t> seed) {
    TokenizerModel model{base, std::move(spec)};
    ordered_json j = model_to_json(model);
    ordered_json config;
    config["command"] = "variant";
    config["base_model"] = opts.model_path;
    config["corpus"] = opts.corpus_path;
    config["kind"] = opts.kind;
    if (opts.kind == "inflate") {
      config["extra"] = opts.extra;
    } else {
      config["pool_size"] = opts.pool;
      config["count"] = opts.count;
      config["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    }
    config["max_lines"] = opts.max_lines;
    j["config"] = std::move(config);
    save_json(j, path);
    std::cerr << "wrote " << opts.kind << " variant (effective |V|="
              << effective_vocab_size(model) << ") -> " << path << "\n";
  };

  if (opts.kind == "inflate") {
    if (opts.extra < 0) {
      throw std::invalid_argument("inflate needs --extra >= 0");
    }
    save_variant(inflate_vocab(base, static_cast<std::uint64_t>(opts.extra)),
                 opts.out_path, std::nullopt);
    return kOk;
  }

  if (opts.pool == 0 || opts.count == 0) {
    throw std::invalid_argument(opts.kind +
                                " needs --pool-size and --count >= 1");
  }
  std::optional<std::int64_t> cap;
  if (opts.max_lines >= 0) cap = opts.max_lines;
  const Corpus corpus = load_corpus(opts.corpus_path, cap);
  const TokenizedCorpus tokenized =
      tokenize_corpus(base, corpus, OovPolicy::kReject, opts.threads);

  const std::vector<std::uint64_t> seeds = parse_seeds(opts.seeds);
  for (const std::uint64_t seed : seeds) {
    const std::string path =
        seeded_path(opts.out_path, seed, seeds.size() > 1);
    if (opts.kind == "random_drop") {
      save_variant(select_drop_set(tokenized, base, opts.pool, opts.count,
                                   seed),
                   path, seed);
    } else if (opts.kind == "duplication") {
      save_variant(select_duplication_set(
                       tokenized, opts.pool,
                       static_cast<std::uint32_t>(opts.count), seed),
                   path, seed);
    } else {
      throw std::invalid_argument(
          "unknown variant kind \"" + opts.kind +
          "\" (expected random_drop|duplication|inflate)");
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// score

struct ScoreOpts {
  std::string model_path;
  std::vector<std::string> corpus_paths;
  std::string out_path;
  std::string format = "table";
  std::string oov = "reject";
  std::string percentiles = "0.03,0.83";
  std::string accounting = "surfaced";
  std::string convention = "consistent";
  double alpha = 3.0;
  std::int64_t max_lines = -1;
  unsigned threads = 1;
};

MetricParams params_from(const ScoreOpts& opts) {
  MetricParams params;
  params.alpha = opts.alpha;
  std::tie(params.gamma1, params.gamma2) =
      parse_percentiles(opts.percentiles);
  params.accounting = accounting_from_name(opts.accounting);
  params.convention = convention_from_name(opts.convention);
  return params;
}

ordered_json score_config(const char* command, const ScoreOpts& opts) {
  ordered_json config;
  config["command"] = command;
  config["model"] = opts.model_path;
  config["corpus"] = opts.corpus_paths;
  config["alpha"] = opts.alpha;
  config["percentiles"] = opts.percentiles;
  config["accounting"] = opts.accounting;
  config["efficiency_convention"] = opts.convention;
  config["oov"] = opts.oov;
  config["max_lines"] = opts.max_lines;
  config["threads"] = opts.threads;
  config["format"] = opts.format;
  return config;
}

int run_score(const ScoreOpts& opts) {
  const TokenizerModel model = load_model(opts.model_path);
  std::optional<std::int64_t> cap;
  if (opts.max_lines >= 0) cap = opts.max_lines;
  const Corpus corpus = load_concatenated(opts.corpus_paths, cap);
  const MetricParams params = params_from(opts);

  const TokenizedCorpus tokenized =
      tokenize_corpus(model, corpus, parse_oov(opts.oov), opts.threads);
  const MetricReport report =
      compute_metrics(tokenized, params, effective_vocab_size(model));

  const ordered_json config = score_config("score", opts);
  if (opts.format == "structured") {
    ordered_json j;
    j["config"] = config;
    j["metrics"] = metrics_to_json(report);
    emit(j.dump(2) + "\n", opts.out_path);
  } else if (opts.format == "table") {
    emit(config_comment_block(config) +
             render_metrics_table(report, variant_kind(model)),
         opts.out_path);
  } else {
    throw std::invalid_argument("unknown format \"" + opts.format +
                                "\" (expected table|structured)");
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  ScoreOpts score;  // model_path holds the baseline model
  std::vector<std::string> variant_paths;
};

int run_compare(const CompareOpts& opts) {
  const TokenizerModel baseline = load_model(opts.score.model_path);
  if (!std::holds_alternative<std::monostate>(baseline.variant)) {
    throw std::invalid_argument("the comparison baseline must be a plain "
                                "model without a variant block");
  }
  std::vector<TokenizerModel> variants;
  variants.reserve(opts.variant_paths.size());
  for (const std::string& path : opts.variant_paths) {
    variants.push_back(load_model(path));
  }
  std::optional<std::int64_t> cap;
  if (opts.score.max_lines >= 0) cap = opts.score.max_lines;
  const Corpus corpus = load_concatenated(opts.score.corpus_paths, cap);
  const MetricParams params = params_from(opts.score);

  const ComparisonReport report = compare_tokenizers(
      corpus, baseline.base, variants, params, opts.score.threads);

  ordered_json config = score_config("compare", opts.score);
  config["variants"] = opts.variant_paths;
  if (opts.score.format == "structured") {
    ordered_json j;
    j["config"] = config;
    j["comparison"] = comparison_to_json(report);
    emit(j.dump(2) + "\n", opts.score.out_path);
  } else if (opts.score.format == "table") {
    emit(config_comment_block(config) + render_comparison_table(report),
         opts.score.out_path);
  } else {
    throw std::invalid_argument("unknown format \"" + opts.score.format +
                                "\" (expected table|structured)");
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::uint64_t seed = 12345;
  std::size_t trials = 1000;
  std::string fault;  // empty = no injected fault
  std::string out_path;
};

struct CheckResult {
  bool ok = true;
  std::string line;
};

// The worked example: probabilities 0.4/0.3/0.2/0.1 and their k=2 and k=10
// duplications of the heaviest token, entropies in bits, efficiencies under
// the mixed-base table convention.
CheckResult check_example_table(bool fault) {
  const std::unordered_map<std::string, std::int64_t> counts{
      {"a", 4}, {"b", 3}, {"c", 2}, {"d", 1}};
  const UnigramDistribution base = distribution_from_counts(counts);
  const std::vector<double> rows[3] = {
      base.prob_vector(),
      duplicated_distribution(base, "a", 2),
      duplicated_distribution(base, "a", 10),
  };
  const std::size_t supports[3] = {4, 5, 13};
  const double expected[3][6] = {
      {1.85, 1.92, 1.66, 1.33, 1.38, 1.20},
      {2.25, 2.28, 2.13, 1.40, 1.42, 1.33},
      {3.18, 3.45, 2.39, 1.24, 1.35, 0.93},
  };

  double max_err = 0.0;
  std::size_t bad = 0;
  for (int r = 0; r < 3; ++r) {
    const std::span<const double> probs(rows[r]);
    double cells[6] = {
        shannon_entropy(probs),
        renyi_entropy(probs, 0.5),
        renyi_entropy(probs, 3.0),
        renyi_efficiency(probs, 1.0, supports[r], EffConvention::kPaperTable),
        renyi_efficiency(probs, 0.5, supports[r], EffConvention::kPaperTable),
        renyi_efficiency(probs, 3.0, supports[r], EffConvention::kPaperTable),
    };
    if (fault && r == 0) cells[0] += 0.1;
    for (int c = 0; c < 6; ++c) {
      const double err = std::abs(cells[c] - expected[r][c]);
      max_err = std::max(max_err, err);
      if (err > 0.01) ++bad;
    }
  }
  CheckResult result;
  result.ok = bad == 0;
  result.line = std::string(result.ok ? "[PASS]" : "[FAIL]") +
                " example table: " + std::to_string(18 - bad) +
                "/18 cells within 0.01 (max error " + fmt_fixed(max_err, 6) +
                ")";
  return result;
}

CheckResult check_drop_condition(std::uint64_t seed, std::size_t trials,
                                 bool fault) {
  SplitMix64 rng(seed);
  const double alphas[4] = {1.5, 2.0, 3.0, 5.0};
  std::size_t agree = 0;
  double min_gap = 1e9;
  for (std::size_t t = 0; t < trials; ++t) {
    std::unordered_map<std::string, std::int64_t> counts;
    counts["x"] = static_cast<std::int64_t>(rng.below(21));
    counts["y"] = static_cast<std::int64_t>(rng.below(21));
    counts["z"] = static_cast<std::int64_t>(rng.below(21));
    const std::uint64_t fillers = rng.below(6);  // vocab size 3..8
    for (std::uint64_t i = 0; i < fillers; ++i) {
      counts["w" + std::to_string(i)] =
          static_cast<std::int64_t>(rng.below(21));
    }
    std::int64_t total = 0;
    for (const auto& [token, count] : counts) total += count;
    if (total == 0) counts["y"] = 1;

    const double alpha = alphas[rng.below(4)];
    const DropConditionReport r =
        drop_condition(counts, "x", "y", "z", alpha);
    const bool verdict = fault ? !r.condition_holds : r.condition_holds;
    if (verdict == r.actual_increase) ++agree;
    min_gap = std::min(min_gap, std::abs(r.lhs - r.rhs));
  }
  CheckResult result;
  result.ok = agree == trials;
  result.line = std::string(result.ok ? "[PASS]" : "[FAIL]") +
                " drop condition vs direct recomputation: " +
                std::to_string(agree) + "/" + std::to_string(trials) +
                " verdicts agree (min |lhs-rhs| " + fmt_sci(min_gap) + ")";
  return result;
}

// Random distribution over 2..16 tokens with counts in 1..50.
UnigramDistribution random_distribution(SplitMix64& rng,
                                        std::size_t& support_out) {
  const std::size_t support = 2 + rng.below(15);
  std::unordered_map<std::string, std::int64_t> counts;
  for (std::size_t i = 0; i < support; ++i) {
    counts["t" + std::to_string(i)] =
        1 + static_cast<std::int64_t>(rng.below(50));
  }
  support_out = support;
  return distribution_from_counts(counts);
}

CheckResult check_duplication_shannon(std::uint64_t seed, std::size_t trials,
                                      bool fault) {
  SplitMix64 rng(seed);
  std::size_t within = 0;
  double max_err = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t support = 0;
    const UnigramDistribution dist = random_distribution(rng, support);
    const std::string x = "t" + std::to_string(rng.below(support));
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(9));
    double predicted = predict_duplication_shannon(dist, x, k);
    if (fault) predicted = shannon_entropy(dist);  // drop the p(x)log2k term
    const std::vector<double> after = duplicated_distribution(dist, x, k);
    const double err = std::abs(predicted - shannon_entropy(after));
    max_err = std::max(max_err, err);
    if (err <= 1e-9) ++within;
  }
  CheckResult result;
  result.ok = within == trials;
  result.line = std::string(result.ok ? "[PASS]" : "[FAIL]") +
                " duplication Shannon prediction: " + std::to_string(within) +
                "/" + std::to_string(trials) +
                " within 1e-9 (max error " + fmt_sci(max_err) + ")";
  return result;
}

CheckResult check_duplication_renyi_grid(std::uint64_t seed,
                                         std::size_t trials, bool fault) {
  SplitMix64 rng(seed);
  std::size_t increased = 0;
  std::size_t checks = 0;
  double min_margin = 1e9;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t support = 0;
    const UnigramDistribution dist = random_distribution(rng, support);
    const std::string x = "t" + std::to_string(rng.below(support));
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(9));
    for (const DupRenyiCheck& check : check_duplication_renyi(dist, x, k)) {
      ++checks;
      const bool up = fault ? !check.increased : check.increased;
      if (up) ++increased;
      min_margin = std::min(min_margin, check.margin);
    }
  }
  CheckResult result;
  result.ok = increased == checks;
  result.line = std::string(result.ok ? "[PASS]" : "[FAIL]") +
                " duplication Renyi strict increase: " +
                std::to_string(increased) + "/" + std::to_string(checks) +
                " margins positive (min margin " + fmt_sci(min_margin) + ")";
  return result;
}

int run_verify(const VerifyOpts& opts) {
  const std::vector<std::string> known_faults = {
      "example-table", "drop-condition", "dup-shannon", "dup-renyi"};
  if (!opts.fault.empty() &&
      std::find(known_faults.begin(), known_faults.end(), opts.fault) ==
          known_faults.end()) {
    throw std::invalid_argument("unknown fault \"" + opts.fault + "\"");
  }

  std::string text;
  text += "# seed: " + std::to_string(opts.seed) + "\n";
  text += "# trials: " + std::to_string(opts.trials) + "\n";
  text += "# fault: " + (opts.fault.empty() ? "none" : opts.fault) + "\n";

  const CheckResult results[4] = {
      check_example_table(opts.fault == "example-table"),
      check_drop_condition(opts.seed, opts.trials,
                           opts.fault == "drop-condition"),
      check_duplication_shannon(opts.seed + 1, opts.trials,
                                opts.fault == "dup-shannon"),
      check_duplication_renyi_grid(opts.seed + 2, opts.trials,
                                   opts.fault == "dup-renyi"),
  };
  bool all_ok = true;
  for (const CheckResult& r : results) {
    text += r.line + "\n";
    all_ok = all_ok && r.ok;
  }
  text += all_ok ? "verification: OK\n" : "verification: FAILED\n";
  emit(text, opts.out_path);
  return all_ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subword tokenization laboratory: BPE training, adversarial "
               "variants, intrinsic metrics, and verification suites"};
  app.require_subcommand(1);

  TrainOpts train_opts;
  CLI::App* train = app.add_subcommand("train", "Train a BPE model");
  train->add_option("corpus", train_opts.corpus_path, "Training corpus")
      ->required();
  train->add_option("-n,--merges", train_opts.num_merges, "Merge count")
      ->required();
  train->add_option("-o,--output", train_opts.out_path, "Model output path")
      ->required();
  train->add_option("--max-lines", train_opts.max_lines,
                    "Read at most this many lines");

  TokenizeOpts tok_opts;
  CLI::App* tok = app.add_subcommand("tokenize", "Tokenize a corpus");
  tok->add_option("model", tok_opts.model_path, "Model file")->required();
  tok->add_option("corpus", tok_opts.corpus_path, "Corpus file")->required();
  tok->add_option("-o,--output", tok_opts.out_path,
                  "Output path (default stdout)");
  tok->add_option("--oov", tok_opts.oov, "OOV policy: reject|pass");
  tok->add_option("--max-lines", tok_opts.max_lines,
                  "Read at most this many lines");
  tok->add_option("--threads", tok_opts.threads, "Worker threads");

  VariantOpts var_opts;
  CLI::App* var =
      app.add_subcommand("variant", "Derive a variant from a base model");
  var->add_option("model", var_opts.model_path, "Base model file")
      ->required();
  var->add_option("corpus", var_opts.corpus_path,
                  "Corpus for frequency ranking")
      ->required();
  var->add_option("--kind", var_opts.kind,
                  "random_drop|duplication|inflate")
      ->required();
  var->add_option("-o,--output", var_opts.out_path, "Variant model path")
      ->required();
  var->add_option("-N,--pool-size", var_opts.pool,
                  "Frequency ranks considered (N)");
  var->add_option("-k,--count", var_opts.count,
                  "Tokens dropped / duplication factor (k)");
  var->add_option("--extra", var_opts.extra, "Synthetic tokens for inflate");
  var->add_option("-s,--seed", var_opts.seeds,
                  "Seed or comma-separated seed list");
  var->add_option("--max-lines", var_opts.max_lines,
                  "Read at most this many lines");
  var->add_option("--threads", var_opts.threads, "Worker threads");

  const auto add_metric_flags = [](CLI::App* cmd, ScoreOpts& opts) {
    cmd->add_option("--alpha", opts.alpha, "Entropy order");
    cmd->add_option("--percentiles", opts.percentiles,
                    "Frequency band, e.g. 0.03,0.83");
    cmd->add_option("--accounting", opts.accounting,
                    "Support accounting: surfaced|full");
    cmd->add_option("--efficiency-convention", opts.convention,
                    "consistent|paper-table");
    cmd->add_option("--format", opts.format, "table|structured");
    cmd->add_option("-o,--output", opts.out_path,
                    "Output path (default stdout)");
    cmd->add_option("--oov", opts.oov, "OOV policy: reject|pass");
    cmd->add_option("--max-lines", opts.max_lines,
                    "Read at most this many lines");
    cmd->add_option("--threads", opts.threads, "Worker threads");
  };

  ScoreOpts score_opts;
  CLI::App* score =
      app.add_subcommand("score", "Compute intrinsic metrics for a model");
  score->add_option("model", score_opts.model_path, "Model file")->required();
  score
      ->add_option("corpus", score_opts.corpus_paths,
                   "Corpus file(s), concatenated before scoring")
      ->required();
  add_metric_flags(score, score_opts);

  CompareOpts cmp_opts;
  CLI::App* cmp =
      app.add_subcommand("compare", "Compare variants against a baseline");
  cmp->add_option("model", cmp_opts.score.model_path, "Baseline model file")
      ->required();
  cmp->add_option("corpus", cmp_opts.score.corpus_paths,
                  "Corpus file(s), concatenated before scoring")
      ->required();
  cmp->add_option("--variant", cmp_opts.variant_paths,
                  "Variant model file (repeatable)");
  add_metric_flags(cmp, cmp_opts.score);

  VerifyOpts verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the entropy-identity and inequality check suites");
  verify->add_option("--seed", verify_opts.seed, "Suite seed");
  verify->add_option("--trials", verify_opts.trials, "Randomized trials");
  verify->add_option("--inject-fault", verify_opts.fault,
                     "Corrupt one formula to exercise the failure path");
  verify->add_option("-o,--output", verify_opts.out_path,
                     "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (train->parsed()) return run_train(train_opts);
    if (tok->parsed()) return run_tokenize(tok_opts);
    if (var->parsed()) return run_variant(var_opts);
    if (score->parsed()) return run_score(score_opts);
    if (cmp->parsed()) return run_compare(cmp_opts);
    if (verify->parsed()) return run_verify(verify_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
