#include "schema.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace rankone::cli {

namespace detail {

void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "config error at " + (path.empty() ? std::string("<root>") : path) + ": " + what);
}

void check_object(const Json& value, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!value.is_object()) config_error(path, "expected an object");
  for (const auto& item : value.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) config_error(path, "unknown key '" + item.key() + "'");
  }
}

void check_array(const Json& value, const std::string& path, bool nonempty) {
  if (!value.is_array()) config_error(path, "expected an array");
  if (nonempty && value.empty()) config_error(path, "expected a nonempty array");
}

const Json* find(const Json& object, std::string_view key) {
  const auto it = object.find(std::string(key));
  return it == object.end() ? nullptr : &*it;
}

const Json& require(const Json& object, std::string_view key, const std::string& path) {
  const Json* v = find(object, key);
  if (!v) config_error(path, "missing key '" + std::string(key) + "'");
  return *v;
}

BigInt get_bigint(const Json& value, const std::string& path) {
  if (value.is_number_unsigned()) return BigInt(value.get<std::uint64_t>());
  if (value.is_number_integer()) return BigInt(value.get<std::int64_t>());
  if (value.is_string()) {
    try {
      return parse_bigint(value.get<std::string>());
    } catch (const Error& e) {
      config_error(path, e.what());
    }
  }
  config_error(path, "expected an integer or a decimal string");
}

Rational get_rational(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational(get_bigint(value, path));
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
      config_error(path, e.what());
    }
  }
  config_error(path, "expected a rational string such as \"1/2\"");
}

std::int64_t get_int(const Json& value, const std::string& path, std::int64_t lo, std::int64_t hi) {
  const BigInt v = get_bigint(value, path);
  if (v < lo || v > hi) config_error(path, "value " + v.str() + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v.convert_to<std::int64_t>();
}

std::uint64_t get_u64(const Json& value, const std::string& path) {
  const BigInt v = get_bigint(value, path);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) config_error(path, "expected an unsigned 64-bit integer");
  return v.convert_to<std::uint64_t>();
}

bool get_bool(const Json& value, const std::string& path) {
  if (!value.is_boolean()) config_error(path, "expected true or false");
  return value.get<bool>();
}

std::string get_string(const Json& value, const std::string& path) {
  if (!value.is_string()) config_error(path, "expected a string");
  return value.get<std::string>();
}

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

}  // namespace detail

using namespace detail;

namespace {

ConstructionParams parse_params(const Json& value) {
  const std::string path = "params";
  check_object(value, path, {"base_width", "sidon_powers", "explicit"});
  Rational width(1);
  if (const Json* w = find(value, "base_width")) width = get_rational(*w, child(path, "base_width"));
  const Json* powers = find(value, "sidon_powers");
  const Json* expl = find(value, "explicit");
  if ((powers != nullptr) == (expl != nullptr)) config_error(path, "exactly one of 'sidon_powers' and 'explicit' is required");
  try {
    if (powers) {
      check_object(*powers, child(path, "sidon_powers"), {"d"});
      return ConstructionParams::sidon_powers(get_bigint(require(*powers, "d", child(path, "sidon_powers")), "params.sidon_powers.d"),
                                             width);
    }
    const std::string epath = child(path, "explicit");
    check_array(*expl, epath);
    std::vector<ExplicitStage> stages;
    for (std::size_t i = 0; i < expl->size(); ++i) {
      const std::string spath = child(epath, i);
      const Json& st = (*expl)[i];
      check_object(st, spath, {"r", "s"});
      ExplicitStage stage;
      stage.cuts = static_cast<std::size_t>(get_int(require(st, "r", spath), child(spath, "r"), 0, 1'000'000));
      const Json& s = require(st, "s", spath);
      check_array(s, child(spath, "s"));
      for (std::size_t k = 0; k < s.size(); ++k) stage.spacers.push_back(get_bigint(s[k], child(child(spath, "s"), k)));
      stages.push_back(std::move(stage));
    }
    return ConstructionParams::explicit_stages(std::move(stages), width);
  } catch (const Error& e) {
    if (std::string_view(e.what()).starts_with("config error")) throw;
    config_error(path, e.what());
  }
}

}  // namespace

RunConfig parse_config(const Json& document, const Overrides& overrides) {
  check_object(document, "",
               {"description", "params", "limits", "precision", "seed", "budget_floors", "sets", "stages", "sidon",
                "theorem3", "mixing", "poisson_exact", "poisson_mc", "asymmetry", "oracle_check"});
  if (const Json* d = find(document, "description")) get_string(*d, "description");
  RunConfig config;
  config.params = parse_params(require(document, "params", ""));
  if (const Json* l = find(document, "limits")) {
    check_object(*l, "limits", {"stage_cap", "range_cap"});
    if (const Json* s = find(*l, "stage_cap")) config.limits.stage_cap = static_cast<int>(get_int(*s, "limits.stage_cap", 1, 1000));
    if (const Json* r = find(*l, "range_cap")) {
      config.limits.range_cap = static_cast<std::size_t>(get_int(*r, "limits.range_cap", 1, std::numeric_limits<std::int64_t>::max()));
    }
  }
  if (const Json* p = find(document, "precision")) config.precision = static_cast<unsigned>(get_int(*p, "precision", 1, kMaxRenderDigits));
  if (const Json* s = find(document, "seed")) config.seed = get_u64(*s, "seed");
  if (const Json* b = find(document, "budget_floors")) {
    config.budget_floors = get_int(*b, "budget_floors", 1, std::numeric_limits<std::int64_t>::max());
  }

  if (overrides.precision) {
    if (*overrides.precision < 1 || *overrides.precision > kMaxRenderDigits) {
      config_error("--precision", "must lie in [1, " + std::to_string(kMaxRenderDigits) + "]");
    }
    config.precision = *overrides.precision;
  }
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.budget_floors) {
    if (*overrides.budget_floors < 1) config_error("--budget-floors", "must be positive");
    config.budget_floors = *overrides.budget_floors;
  }
  if (overrides.stage_cap) {
    if (*overrides.stage_cap < 1) config_error("--stage-cap", "must be positive");
    config.limits.stage_cap = *overrides.stage_cap;
  }
  try {
    Construction probe(config.params, config.limits);  // rejects caps the rule cannot honor
  } catch (const Error& e) {
    config_error("limits", e.what());
  }
  config.document = document;
  return config;
}

RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json document;
  try {
    document = Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    config_error("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(document, overrides);
}

Json provenance(const RunConfig& config) {
  Json params = Json::object();
  params["base_width"] = to_string(config.params.base_width);
  if (const auto* powers = std::get_if<SidonPowerRule>(&config.params.rule)) {
    params["sidon_powers"] = Json{{"d", powers->d.str()}};
  } else {
    Json stages = Json::array();
    for (const auto& st : std::get<ExplicitRule>(config.params.rule).stages) {
      Json spacers = Json::array();
      for (const auto& s : st.spacers) spacers.push_back(s.str());
      stages.push_back(Json{{"r", st.cuts}, {"s", spacers}});
    }
    params["explicit"] = stages;
  }
  Json out = Json::object();
  out["tool"] = "rankone";
  out["params"] = params;
  out["limits"] = Json{{"stage_cap", config.limits.stage_cap}, {"range_cap", config.limits.range_cap}};
  out["precision"] = config.precision;
  out["rounding"] = "round-half-even";
  out["working_digits"] = kRealDigits;
  out["seed"] = std::to_string(config.seed);
  out["rng"] = "philox4x32-10";
  out["budget_floors"] = std::to_string(config.budget_floors);
  return out;
}

}  // namespace rankone::cli
