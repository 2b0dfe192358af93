#ifndef TOKLAB_REPORT_HPP
#define TOKLAB_REPORT_HPP

// Rendering of metric and comparison reports as aligned plain-text tables
// and as JSON documents, plus small artifact-writing helpers. All numeric
// formatting is fixed-width so identical inputs yield identical bytes.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "toklab/analysis.hpp"
#include "toklab/metrics.hpp"

namespace toklab {

std::string fmt_fixed(double value, int precision = 4);

const char* accounting_name(Accounting accounting);
const char* convention_name(EffConvention convention);
Accounting accounting_from_name(std::string_view name);
EffConvention convention_from_name(std::string_view name);

nlohmann::ordered_json params_to_json(const MetricParams& params);
nlohmann::ordered_json metrics_to_json(const MetricReport& report);
nlohmann::ordered_json comparison_to_json(const ComparisonReport& report);

// Single-row table: label | Eff{a} | PCT | SEQ | H | |V|.
std::string render_metrics_table(const MetricReport& report,
                                 std::string_view label);

// One row per tokenizer plus delta columns against the baseline row.
std::string render_comparison_table(const ComparisonReport& report);

void save_text(const std::string& text, const std::string& path);
void save_json(const nlohmann::ordered_json& j, const std::string& path);

}  // namespace toklab

#endif  // TOKLAB_REPORT_HPP
