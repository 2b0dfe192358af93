#include "toklab/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "toklab/rng.hpp"

namespace toklab {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json model_to_json(const TokenizerModel& model) {
  ordered_json j;
  j["version"] = kModelFormatVersion;
  j["alphabet"] = model.base.alphabet();
  ordered_json merges = ordered_json::array();
  for (const Merge& m : model.base.merges()) {
    merges.push_back(ordered_json::array({m.left, m.right}));
  }
  j["merges"] = std::move(merges);

  if (const auto* drop = std::get_if<RandomDropSpec>(&model.variant)) {
    ordered_json v;
    v["kind"] = "random_drop";
    v["pool_size"] = drop->pool_size;
    v["drop_count"] = drop->drop_count;
    v["seed"] = drop->seed;
    v["rng"] = kRngName;
    v["drop_set"] = drop->drop_set;
    j["variant"] = std::move(v);
  } else if (const auto* dup = std::get_if<DuplicationSpec>(&model.variant)) {
    ordered_json v;
    v["kind"] = "duplication";
    v["top_count"] = dup->top_count;
    v["factor"] = dup->factor;
    v["seed"] = dup->seed;
    v["rng"] = kRngName;
    v["duplicated_set"] = dup->duplicated_set;
    j["variant"] = std::move(v);
  } else if (const auto* inf = std::get_if<InflationSpec>(&model.variant)) {
    ordered_json v;
    v["kind"] = "inflate";
    v["extra_tokens"] = inf->extra_tokens;
    v["synthetic"] = inf->synthetic;
    j["variant"] = std::move(v);
  }
  return j;
}

namespace {

void require_rng(const json& v) {
  const std::string name = v.value("rng", "");
  if (name != kRngName) {
    throw std::runtime_error("variant block uses generator \"" + name +
                             "\", expected \"" + std::string(kRngName) +
                             "\"");
  }
}

std::vector<std::string> sorted_strings(const json& a) {
  std::vector<std::string> out = a.get<std::vector<std::string>>();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TokenizerModel model_from_json(const nlohmann::json& j) {
  const int version = j.at("version").get<int>();
  if (version != kModelFormatVersion) {
    throw std::runtime_error("unsupported model format version " +
                             std::to_string(version));
  }
  std::vector<std::string> alphabet =
      j.at("alphabet").get<std::vector<std::string>>();
  std::vector<Merge> merges;
  for (const json& pair : j.at("merges")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::runtime_error("merge entries must be [left, right] pairs");
    }
    Merge m;
    m.left = pair[0].get<std::string>();
    m.right = pair[1].get<std::string>();
    merges.push_back(std::move(m));
  }

  TokenizerModel model{Tokenizer(std::move(alphabet), std::move(merges)),
                       std::monostate{}};
  if (!j.contains("variant")) return model;

  const json& v = j.at("variant");
  const std::string kind = v.at("kind").get<std::string>();
  if (kind == "random_drop") {
    require_rng(v);
    RandomDropSpec spec;
    spec.pool_size = v.at("pool_size").get<std::size_t>();
    spec.drop_count = v.at("drop_count").get<std::size_t>();
    spec.seed = v.at("seed").get<std::uint64_t>();
    spec.drop_set = sorted_strings(v.at("drop_set"));
    for (const std::string& t : spec.drop_set) {
      if (!model.base.contains(t) || model.base.is_atomic(t)) {
        throw std::runtime_error(
            "drop set entry \"" + t +
            "\" is not a non-atomic vocabulary entry of the base tokenizer");
      }
    }
    model.variant = std::move(spec);
  } else if (kind == "duplication") {
    require_rng(v);
    DuplicationSpec spec;
    spec.top_count = v.at("top_count").get<std::size_t>();
    spec.factor = v.at("factor").get<std::uint32_t>();
    spec.seed = v.at("seed").get<std::uint64_t>();
    spec.duplicated_set = sorted_strings(v.at("duplicated_set"));
    if (spec.factor < 2) {
      throw std::runtime_error("duplication factor must be at least 2");
    }
    model.variant = std::move(spec);
  } else if (kind == "inflate") {
    InflationSpec spec;
    spec.extra_tokens = v.at("extra_tokens").get<std::uint64_t>();
    spec.synthetic = v.at("synthetic").get<std::vector<std::string>>();
    if (spec.synthetic.size() != spec.extra_tokens) {
      throw std::runtime_error(
          "inflate block: extra_tokens does not match the synthetic list");
    }
    model.variant = std::move(spec);
  } else {
    throw std::runtime_error("unknown variant kind \"" + kind + "\"");
  }
  return model;
}

void save_model(const TokenizerModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open \"" + path + "\" for writing");
  }
  out << model_to_json(model).dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("failed writing model to \"" + path + "\"");
  }
}

TokenizerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open model file \"" + path + "\"");
  }
  try {
    const json j = json::parse(in);
    return model_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error("model file \"" + path + "\": " + e.what());
  }
}

}  // namespace toklab
