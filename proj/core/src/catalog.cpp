#include "naiveml/catalog.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "naiveml/errors.hpp"

namespace naiveml {

using nlohmann::json;

std::string to_string(SlotRole role) {
  switch (role) {
    case SlotRole::data_preprocessor: return "data_preprocessor";
    case SlotRole::feature_preprocessor: return "feature_preprocessor";
    case SlotRole::predictor: return "predictor";
  }
  return "?";
}

SlotRole slot_role_from_string(const std::string& s) {
  if (s == "data_preprocessor") return SlotRole::data_preprocessor;
  if (s == "feature_preprocessor") return SlotRole::feature_preprocessor;
  if (s == "predictor") return SlotRole::predictor;
  throw ConfigError("unknown slot role '" + s + "'");
}

std::string to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::real: return "real";
    case ParamKind::integer: return "integer";
    case ParamKind::categorical: return "categorical";
  }
  return "?";
}

std::string to_string(const ParamValue& v) {
  if (std::holds_alternative<double>(v)) {
    std::ostringstream os;
    os << std::get<double>(v);
    return os.str();
  }
  if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
  return std::get<std::string>(v);
}

const ParamSpec* ComponentSpec::find_param(const std::string& name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::size_t Catalog::predictor_slot() const {
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].role == SlotRole::predictor) return s;
  }
  throw std::logic_error("catalog has no predictor slot");
}

bool Catalog::is_pre_slot(std::size_t slot) const {
  return slots.at(slot).role != SlotRole::predictor;
}

const ComponentSpec* Catalog::find(std::size_t slot, const std::string& id) const {
  for (const auto& cand : slots.at(slot).candidates) {
    if (cand.id == id) return &cand;
  }
  return nullptr;
}

const ComponentSpec& Catalog::standard_predictor_spec() const {
  const ComponentSpec* spec = find(predictor_slot(), standard_predictor);
  if (spec == nullptr) {
    throw std::logic_error("standard predictor '" + standard_predictor + "' not in catalog");
  }
  return *spec;
}

namespace {

bool default_in_domain(const ParamSpec& p) {
  const ParamValue& d = *p.default_value;
  switch (p.kind) {
    case ParamKind::real: {
      if (!std::holds_alternative<double>(d)) return false;
      const double v = std::get<double>(d);
      return v >= p.lo && v <= p.hi;
    }
    case ParamKind::integer: {
      if (!std::holds_alternative<std::int64_t>(d)) return false;
      const double v = static_cast<double>(std::get<std::int64_t>(d));
      return v >= p.lo && v <= p.hi;
    }
    case ParamKind::categorical: {
      if (!std::holds_alternative<std::string>(d)) return false;
      const std::string& v = std::get<std::string>(d);
      for (const auto& c : p.choices) {
        if (c == v) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_catalog(const Catalog& c) {
  std::vector<std::string> out;
  auto flag = [&out](std::string msg) { out.push_back(std::move(msg)); };

  std::size_t predictor_slots = 0;
  std::set<std::string> seen_ids;
  for (std::size_t s = 0; s < c.slots.size(); ++s) {
    const CatalogSlot& slot = c.slots[s];
    const std::string where = "slot " + std::to_string(s);
    if (slot.role == SlotRole::predictor) ++predictor_slots;
    if (slot.candidates.empty()) flag(where + ": no candidates");
    for (const ComponentSpec& cand : slot.candidates) {
      const std::string who = where + ", component '" + cand.id + "'";
      if (cand.id.empty()) flag(where + ": component with empty id");
      if (!seen_ids.insert(cand.id).second) flag("duplicate component id '" + cand.id + "'");
      if (cand.role != slot.role) flag(who + ": role differs from its slot");
      if (cand.implementation_key.empty()) flag(who + ": empty implementation_key");
      std::set<std::string> seen_params;
      for (const ParamSpec& p : cand.params) {
        const std::string which = who + ", param '" + p.name + "'";
        if (p.name.empty()) flag(who + ": param with empty name");
        if (!seen_params.insert(p.name).second) flag(who + ": duplicate param '" + p.name + "'");
        if (p.kind != ParamKind::categorical) {
          if (!(p.lo <= p.hi)) flag(which + ": lo > hi");
          if (!p.choices.empty()) flag(which + ": choices on a numeric param");
        }
        if (p.kind == ParamKind::real && p.log_scale && !(p.lo > 0.0)) {
          flag(which + ": log_scale needs lo > 0");
        }
        if (p.kind != ParamKind::real && p.log_scale) {
          flag(which + ": log_scale is only for real params");
        }
        if (p.kind == ParamKind::categorical && p.choices.empty()) {
          flag(which + ": categorical param with no choices");
        }
        if (!p.default_value.has_value()) {
          flag(which + ": no default declared");
        } else if (!default_in_domain(p)) {
          flag(which + ": default outside its domain");
        }
      }
    }
  }
  if (predictor_slots == 0) flag("no predictor slot");
  if (predictor_slots > 1) flag("more than one predictor slot");
  if (predictor_slots == 1) {
    const ComponentSpec* std_pred = c.find(c.predictor_slot(), c.standard_predictor);
    if (std_pred == nullptr) {
      flag("standard_predictor '" + c.standard_predictor +
           "' is not a candidate of the predictor slot");
    }
  }
  return out;
}

namespace {

// Strict field access: every object key must be consumed.
void expect_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.count(key) == 0) {
      throw ConfigError("catalog: unknown field '" + key + "' in " + where);
    }
  }
}

ParamValue coerce_value(const json& v, ParamKind kind, const std::string& where) {
  switch (kind) {
    case ParamKind::real:
      if (!v.is_number()) throw ConfigError("catalog: " + where + " must be a number");
      return v.get<double>();
    case ParamKind::integer:
      if (!v.is_number_integer()) throw ConfigError("catalog: " + where + " must be an integer");
      return v.get<std::int64_t>();
    case ParamKind::categorical:
      if (!v.is_string()) throw ConfigError("catalog: " + where + " must be a string");
      return v.get<std::string>();
  }
  throw ConfigError("catalog: bad kind for " + where);
}

ParamSpec parse_param(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("catalog: param in " + where + " must be an object");
  expect_keys(j, {"name", "kind", "lo", "hi", "log_scale", "choices", "default"}, where);
  ParamSpec p;
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ConfigError("catalog: param in " + where + " needs a string 'name'");
  }
  p.name = j["name"].get<std::string>();
  const std::string self = where + " param '" + p.name + "'";
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("catalog: " + self + " needs a string 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "real") p.kind = ParamKind::real;
  else if (kind == "integer") p.kind = ParamKind::integer;
  else if (kind == "categorical") p.kind = ParamKind::categorical;
  else throw ConfigError("catalog: " + self + " has unknown kind '" + kind + "'");

  if (p.kind == ParamKind::categorical) {
    if (j.contains("lo") || j.contains("hi") || j.contains("log_scale")) {
      throw ConfigError("catalog: " + self + " is categorical; bounds do not apply");
    }
    if (!j.contains("choices") || !j["choices"].is_array()) {
      throw ConfigError("catalog: " + self + " needs a 'choices' array");
    }
    for (const auto& c : j["choices"]) {
      if (!c.is_string()) throw ConfigError("catalog: " + self + " choices must be strings");
      p.choices.push_back(c.get<std::string>());
    }
  } else {
    if (j.contains("choices")) {
      throw ConfigError("catalog: " + self + " is numeric; 'choices' does not apply");
    }
    if (!j.contains("lo") || !j.contains("hi") || !j["lo"].is_number() || !j["hi"].is_number()) {
      throw ConfigError("catalog: " + self + " needs numeric 'lo' and 'hi'");
    }
    p.lo = j["lo"].get<double>();
    p.hi = j["hi"].get<double>();
    if (j.contains("log_scale")) {
      if (!j["log_scale"].is_boolean()) {
        throw ConfigError("catalog: " + self + " log_scale must be a boolean");
      }
      p.log_scale = j["log_scale"].get<bool>();
    }
  }
  if (j.contains("default")) {
    p.default_value = coerce_value(j["default"], p.kind, self + " default");
  }
  return p;
}

ComponentSpec parse_component(const json& j, SlotRole role, const std::string& where) {
  if (!j.is_object()) throw ConfigError("catalog: candidate in " + where + " must be an object");
  expect_keys(j, {"id", "implementation_key", "params"}, where);
  ComponentSpec c;
  c.role = role;
  if (!j.contains("id") || !j["id"].is_string()) {
    throw ConfigError("catalog: candidate in " + where + " needs a string 'id'");
  }
  c.id = j["id"].get<std::string>();
  if (!j.contains("implementation_key") || !j["implementation_key"].is_string()) {
    throw ConfigError("catalog: candidate '" + c.id + "' needs a string 'implementation_key'");
  }
  c.implementation_key = j["implementation_key"].get<std::string>();
  if (j.contains("params")) {
    if (!j["params"].is_array()) {
      throw ConfigError("catalog: candidate '" + c.id + "' params must be an array");
    }
    for (const auto& pj : j["params"]) {
      c.params.push_back(parse_param(pj, "candidate '" + c.id + "'"));
    }
  }
  return c;
}

}  // namespace

Catalog parse_catalog(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("catalog: not valid JSON");
  if (!j.is_object()) throw ConfigError("catalog: top level must be an object");
  expect_keys(j, {"slots", "standard_predictor"}, "catalog");
  if (!j.contains("slots") || !j["slots"].is_array()) {
    throw ConfigError("catalog: needs a 'slots' array");
  }
  Catalog c;
  for (std::size_t s = 0; s < j["slots"].size(); ++s) {
    const json& sj = j["slots"][s];
    const std::string where = "slot " + std::to_string(s);
    if (!sj.is_object()) throw ConfigError("catalog: " + where + " must be an object");
    expect_keys(sj, {"role", "candidates"}, where);
    if (!sj.contains("role") || !sj["role"].is_string()) {
      throw ConfigError("catalog: " + where + " needs a string 'role'");
    }
    CatalogSlot slot;
    slot.role = slot_role_from_string(sj["role"].get<std::string>());
    if (!sj.contains("candidates") || !sj["candidates"].is_array()) {
      throw ConfigError("catalog: " + where + " needs a 'candidates' array");
    }
    for (const auto& cj : sj["candidates"]) {
      slot.candidates.push_back(parse_component(cj, slot.role, where));
    }
    c.slots.push_back(std::move(slot));
  }
  if (!j.contains("standard_predictor") || !j["standard_predictor"].is_string()) {
    throw ConfigError("catalog: needs a string 'standard_predictor'");
  }
  c.standard_predictor = j["standard_predictor"].get<std::string>();
  return c;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string catalog_to_json(const Catalog& c) {
  json j;
  j["standard_predictor"] = c.standard_predictor;
  j["slots"] = json::array();
  for (const CatalogSlot& slot : c.slots) {
    json sj;
    sj["role"] = to_string(slot.role);
    sj["candidates"] = json::array();
    for (const ComponentSpec& cand : slot.candidates) {
      json cj;
      cj["id"] = cand.id;
      cj["implementation_key"] = cand.implementation_key;
      cj["params"] = json::array();
      for (const ParamSpec& p : cand.params) {
        json pj;
        pj["name"] = p.name;
        pj["kind"] = to_string(p.kind);
        if (p.kind == ParamKind::categorical) {
          pj["choices"] = p.choices;
        } else {
          pj["lo"] = p.lo;
          pj["hi"] = p.hi;
          if (p.log_scale) pj["log_scale"] = true;
        }
        if (p.default_value.has_value()) {
          const ParamValue& d = *p.default_value;
          if (std::holds_alternative<double>(d)) pj["default"] = std::get<double>(d);
          else if (std::holds_alternative<std::int64_t>(d)) pj["default"] = std::get<std::int64_t>(d);
          else pj["default"] = std::get<std::string>(d);
        }
        cj["params"].push_back(std::move(pj));
      }
      sj["candidates"].push_back(std::move(cj));
    }
    j["slots"].push_back(std::move(sj));
  }
  return j.dump(2);
}

}  // namespace naiveml
