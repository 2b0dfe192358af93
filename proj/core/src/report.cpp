#include "toklab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace toklab {

using nlohmann::ordered_json;

std::string fmt_fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

namespace {

// "3" for 3.0, "0.5" for 0.5 — used in column headers like Eff3.
std::string fmt_short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

std::string fmt_vocab(double value) {
  if (std::fabs(value - std::round(value)) < 1e-9) {
    return fmt_fixed(value, 0);
  }
  return fmt_fixed(value, 1);
}

// Pads cells so every column lines up; first two columns left-aligned,
// numeric columns right-aligned.
std::string align_rows(const std::vector<std::vector<std::string>>& rows,
                       std::size_t left_columns) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      const std::size_t pad = width[c] - row[c].size();
      if (c < left_columns) {
        line += row[c];
        line.append(pad, ' ');
      } else {
        line.append(pad, ' ');
        line += row[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

const char* accounting_name(Accounting accounting) {
  return accounting == Accounting::kFullVocab ? "full" : "surfaced";
}

const char* convention_name(EffConvention convention) {
  return convention == EffConvention::kPaperTable ? "paper-table"
                                                  : "consistent";
}

Accounting accounting_from_name(std::string_view name) {
  if (name == "surfaced") return Accounting::kSurfacedOnly;
  if (name == "full") return Accounting::kFullVocab;
  throw std::invalid_argument("unknown accounting mode \"" +
                              std::string(name) +
                              "\" (expected surfaced|full)");
}

EffConvention convention_from_name(std::string_view name) {
  if (name == "consistent") return EffConvention::kConsistent;
  if (name == "paper-table") return EffConvention::kPaperTable;
  throw std::invalid_argument("unknown efficiency convention \"" +
                              std::string(name) +
                              "\" (expected consistent|paper-table)");
}

nlohmann::ordered_json params_to_json(const MetricParams& params) {
  ordered_json j;
  j["alpha"] = params.alpha;
  j["percentiles"] = ordered_json::array({params.gamma1, params.gamma2});
  j["accounting"] = accounting_name(params.accounting);
  j["efficiency_convention"] = convention_name(params.convention);
  j["entropy_unit"] = "bits";
  return j;
}

nlohmann::ordered_json metrics_to_json(const MetricReport& report) {
  ordered_json j;
  j["params"] = params_to_json(report.params);
  j["shannon_entropy"] = report.shannon;
  j["renyi_entropy"] = report.renyi;
  j["renyi_efficiency"] = report.efficiency;
  j["percentile_freq"] = report.percentile;
  j["tokens_per_line"] = report.seq;
  j["support_size"] = report.support_size;
  j["total_tokens"] = report.total_tokens;
  return j;
}

nlohmann::ordered_json comparison_to_json(const ComparisonReport& report) {
  ordered_json j;
  j["params"] = params_to_json(report.params);
  ordered_json rows = ordered_json::array();
  for (const ComparisonRow& row : report.rows) {
    ordered_json r;
    r["label"] = row.label;
    r["hyper"] = row.hyper;
    r["efficiency"] = row.efficiency;
    r["percentile"] = row.percentile;
    r["seq"] = row.seq;
    r["shannon"] = row.shannon;
    r["effective_vocab"] = row.effective_vocab;
    r["delta_efficiency"] = row.d_efficiency;
    r["delta_percentile"] = row.d_percentile;
    r["delta_seq"] = row.d_seq;
    r["delta_shannon"] = row.d_shannon;
    r["is_baseline"] = row.is_baseline;
    r["is_aggregate"] = row.is_aggregate;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string render_metrics_table(const MetricReport& report,
                                 std::string_view label) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"tokenizer", "Eff" + fmt_short(report.params.alpha), "PCT",
                  "SEQ", "H", "|V|"});
  rows.push_back({std::string(label), fmt_fixed(report.efficiency),
                  fmt_fixed(report.percentile), fmt_fixed(report.seq),
                  fmt_fixed(report.shannon),
                  std::to_string(report.support_size)});
  return align_rows(rows, 1);
}

std::string render_comparison_table(const ComparisonReport& report) {
  const std::string eff = "Eff" + fmt_short(report.params.alpha);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"tokenizer", "hyper", eff, "PCT", "SEQ", "H", "|V|",
                  "d" + eff, "dPCT", "dSEQ"});
  for (const ComparisonRow& row : report.rows) {
    rows.push_back({row.label, row.hyper, fmt_fixed(row.efficiency),
                    fmt_fixed(row.percentile), fmt_fixed(row.seq),
                    fmt_fixed(row.shannon), fmt_vocab(row.effective_vocab),
                    fmt_fixed(row.d_efficiency), fmt_fixed(row.d_percentile),
                    fmt_fixed(row.d_seq)});
  }
  return align_rows(rows, 2);
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open \"" + path + "\" for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing \"" + path + "\"");
  }
}

void save_json(const nlohmann::ordered_json& j, const std::string& path) {
  save_text(j.dump(2) + "\n", path);
}

}  // namespace toklab
