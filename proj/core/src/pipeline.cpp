#include "naiveml/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "naiveml/errors.hpp"

namespace naiveml {

ParamAssignment default_params(const ComponentSpec& spec) {
  std::map<std::string, ParamValue> values;
  for (const ParamSpec& p : spec.params) {
    if (!p.default_value.has_value()) {
      throw ConfigError("component '" + spec.id + "' param '" + p.name + "' has no default");
    }
    values.emplace(p.name, *p.default_value);
  }
  return ParamAssignment::with_values(std::move(values));
}

ParamAssignment sample_params(const ComponentSpec& spec, Rng& rng) {
  std::map<std::string, ParamValue> values;
  for (const ParamSpec& p : spec.params) {
    switch (p.kind) {
      case ParamKind::real:
        if (p.log_scale) {
          values.emplace(p.name, std::exp(uniform_real(rng, std::log(p.lo), std::log(p.hi))));
        } else {
          values.emplace(p.name, uniform_real(rng, p.lo, p.hi));
        }
        break;
      case ParamKind::integer:
        values.emplace(p.name, uniform_int(rng, static_cast<std::int64_t>(std::ceil(p.lo)),
                                           static_cast<std::int64_t>(std::floor(p.hi))));
        break;
      case ParamKind::categorical:
        values.emplace(p.name, p.choices[uniform_index(rng, p.choices.size())]);
        break;
    }
  }
  return ParamAssignment::with_values(std::move(values));
}

std::map<std::string, ParamValue> resolve_params(const ComponentSpec& spec,
                                                 const ParamAssignment& a) {
  std::map<std::string, ParamValue> out = default_params(spec).values;
  if (!a.use_defaults) {
    for (const auto& [name, value] : a.values) out[name] = value;
  }
  return out;
}

namespace {

bool value_in_domain(const ParamSpec& p, const ParamValue& v) {
  switch (p.kind) {
    case ParamKind::real: {
      if (!std::holds_alternative<double>(v)) return false;
      const double x = std::get<double>(v);
      return x >= p.lo && x <= p.hi;
    }
    case ParamKind::integer: {
      if (!std::holds_alternative<std::int64_t>(v)) return false;
      const double x = static_cast<double>(std::get<std::int64_t>(v));
      return x >= p.lo && x <= p.hi;
    }
    case ParamKind::categorical: {
      if (!std::holds_alternative<std::string>(v)) return false;
      for (const auto& c : p.choices) {
        if (c == std::get<std::string>(v)) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_pipeline(const Pipeline& p, const Catalog& c) {
  std::vector<std::string> out;
  if (p.slots.size() != c.slots.size()) {
    out.push_back("pipeline has " + std::to_string(p.slots.size()) + " slots, catalog has " +
                  std::to_string(c.slots.size()));
    return out;
  }
  for (std::size_t s = 0; s < p.slots.size(); ++s) {
    const std::string where = "slot " + std::to_string(s);
    if (!p.slots[s].has_value()) {
      if (!c.is_pre_slot(s)) out.push_back(where + ": predictor slot cannot be Blank");
      continue;
    }
    const SlotChoice& choice = *p.slots[s];
    const ComponentSpec* spec = c.find(s, choice.component_id);
    if (spec == nullptr) {
      out.push_back(where + ": unknown component '" + choice.component_id + "'");
      continue;
    }
    if (!choice.params.use_defaults) {
      for (const auto& [name, value] : choice.params.values) {
        const ParamSpec* ps = spec->find_param(name);
        if (ps == nullptr) {
          out.push_back(where + ": value for undeclared param '" + name + "'");
        } else if (!value_in_domain(*ps, value)) {
          out.push_back(where + ": param '" + name + "' value out of domain");
        }
      }
    }
  }
  return out;
}

namespace {

void append_value(std::ostream& os, const ParamValue& v) {
  if (std::holds_alternative<double>(v)) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v));
    os << buf;
  } else if (std::holds_alternative<std::int64_t>(v)) {
    os << std::get<std::int64_t>(v);
  } else {
    os << '\'' << std::get<std::string>(v) << '\'';
  }
}

}  // namespace

std::string pipeline_key(const Pipeline& p) {
  std::ostringstream os;
  for (std::size_t s = 0; s < p.slots.size(); ++s) {
    if (s > 0) os << '|';
    if (!p.slots[s].has_value()) {
      os << '-';
      continue;
    }
    const SlotChoice& choice = *p.slots[s];
    os << choice.component_id;
    if (choice.params.use_defaults) {
      os << "(_)";
    } else {
      os << '(';
      bool first = true;
      for (const auto& [name, value] : choice.params.values) {
        if (!first) os << ',';
        first = false;
        os << name << '=';
        append_value(os, value);
      }
      os << ')';
    }
  }
  return os.str();
}

std::string describe(const Pipeline& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t s = 0; s < p.slots.size(); ++s) {
    if (s > 0) os << " -> ";
    if (!p.slots[s].has_value()) {
      os << "blank";
      continue;
    }
    os << p.slots[s]->component_id;
    if (!p.slots[s]->params.use_defaults && !p.slots[s]->params.values.empty()) {
      os << '{';
      bool first = true;
      for (const auto& [name, value] : p.slots[s]->params.values) {
        if (!first) os << ", ";
        first = false;
        os << name << '=' << to_string(value);
      }
      os << '}';
    }
  }
  os << ']';
  return os.str();
}

}  // namespace naiveml
