#ifndef TOKLAB_MODEL_IO_HPP
#define TOKLAB_MODEL_IO_HPP

// Model file format: JSON with `version`, `alphabet`, `merges` (ordered
// [left, right] pairs), and an optional `variant` block carrying the
// materialized drop/duplication/synthetic sets so saved models are
// self-contained. Unknown top-level keys (e.g. an echoed run config) are
// ignored on load; save -> load -> save reproduces the file byte for byte.

#include <string>

#include <nlohmann/json.hpp>

#include "toklab/model.hpp"

namespace toklab {

inline constexpr int kModelFormatVersion = 1;

nlohmann::ordered_json model_to_json(const TokenizerModel& model);
TokenizerModel model_from_json(const nlohmann::json& j);

// File variants; save writes 2-space-indented JSON with a trailing newline
// so identical models produce byte-identical files.
void save_model(const TokenizerModel& model, const std::string& path);
TokenizerModel load_model(const std::string& path);

}  // namespace toklab

#endif  // TOKLAB_MODEL_IO_HPP
