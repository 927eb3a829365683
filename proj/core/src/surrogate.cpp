#include "naiveml/surrogate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "naiveml/errors.hpp"

namespace naiveml {

using nlohmann::json;

Catalog make_surrogate_catalog(const std::vector<SurrogateSlotShape>& shapes) {
  Catalog c;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    CatalogSlot slot;
    slot.role = shapes[s].role;
    for (std::size_t i = 0; i < shapes[s].candidates; ++i) {
      ComponentSpec spec;
      spec.id = "s" + std::to_string(s) + "_c" + std::to_string(i);
      spec.role = shapes[s].role;
      spec.implementation_key = "surrogate";
      for (std::size_t p = 0; p < shapes[s].real_params; ++p) {
        ParamSpec ps;
        ps.name = "x" + std::to_string(p);
        ps.kind = ParamKind::real;
        ps.lo = 0.0;
        ps.hi = 1.0;
        ps.default_value = ParamValue{0.5};
        spec.params.push_back(std::move(ps));
      }
      slot.candidates.push_back(std::move(spec));
    }
    if (shapes[s].role == SlotRole::predictor && c.standard_predictor.empty() &&
        !slot.candidates.empty()) {
      c.standard_predictor = slot.candidates.front().id;
    }
    c.slots.push_back(std::move(slot));
  }
  return c;
}

SurrogateSurface make_surface(const Catalog& catalog, double interaction_scale, double amp_lo,
                              double amp_hi, std::uint64_t seed, double noise_sd) {
  Rng rng(seed);
  SurrogateSurface surface;
  surface.interaction_scale = interaction_scale;
  surface.noise_sd = noise_sd;
  surface.noise_seed = seed;

  // Options per slot: every candidate, plus Blank on pre-processor slots.
  std::vector<std::vector<std::optional<std::string>>> options(catalog.slots.size());
  for (std::size_t s = 0; s < catalog.slots.size(); ++s) {
    if (catalog.is_pre_slot(s)) options[s].push_back(std::nullopt);
    for (const ComponentSpec& cand : catalog.slots[s].candidates) {
      options[s].push_back(cand.id);
    }
  }

  for (std::size_t s = 0; s < options.size(); ++s) {
    for (const auto& opt : options[s]) {
      surface.base[{s, opt}] = uniform_unit(rng);
    }
  }
  for (std::size_t i = 0; i < options.size(); ++i) {
    for (std::size_t j = i + 1; j < options.size(); ++j) {
      for (const auto& a : options[i]) {
        for (const auto& b : options[j]) {
          // The scale is baked in here; a zero epsilon zeroes the entries.
          surface.interactions[{i, a, j, b}] = interaction_scale * uniform_real(rng, -1.0, 1.0);
        }
      }
    }
  }
  for (const CatalogSlot& slot : catalog.slots) {
    for (const ComponentSpec& cand : slot.candidates) {
      for (const ParamSpec& p : cand.params) {
        if (p.kind != ParamKind::real) continue;
        ParamBowl bowl;
        bowl.component_id = cand.id;
        bowl.param = p.name;
        bowl.lo = p.lo;
        bowl.hi = p.hi;
        bowl.default_value =
            p.default_value.has_value() && std::holds_alternative<double>(*p.default_value)
                ? std::get<double>(*p.default_value)
                : 0.5 * (p.lo + p.hi);
        bowl.optimum = uniform_real(rng, p.lo, p.hi);
        bowl.amplitude = uniform_real(rng, amp_lo, amp_hi);
        surface.param_bowls.push_back(std::move(bowl));
      }
    }
  }
  return surface;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Standard normal as a pure function of (seed, key): Box-Muller on two
// hash-derived uniforms. Re-querying the same pipeline repeats the noise.
double hashed_normal(std::uint64_t seed, const std::string& key) {
  const std::uint64_t h = splitmix64(fnv1a(key) ^ splitmix64(seed));
  const std::uint64_t h2 = splitmix64(h);
  const double u1 = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double bowl_value(const SurrogateSurface& surface, const ParamBowl& bowl,
                  const SlotChoice& choice) {
  if (!choice.params.use_defaults) {
    auto it = choice.params.values.find(bowl.param);
    if (it != choice.params.values.end()) {
      if (std::holds_alternative<double>(it->second)) return std::get<double>(it->second);
      if (std::holds_alternative<std::int64_t>(it->second)) {
        return static_cast<double>(std::get<std::int64_t>(it->second));
      }
    }
  }
  (void)surface;
  return bowl.default_value;
}

}  // namespace

EvalResult surrogate_eval(const SurrogateSurface& surface, const Pipeline& pipeline) {
  double score = 0.0;
  std::vector<std::optional<std::string>> chosen(pipeline.slots.size());
  for (std::size_t s = 0; s < pipeline.slots.size(); ++s) {
    chosen[s] = pipeline.slots[s].has_value()
                    ? std::optional<std::string>(pipeline.slots[s]->component_id)
                    : std::nullopt;
    auto it = surface.base.find({s, chosen[s]});
    if (it == surface.base.end()) {
      EvalResult r;
      r.status = EvalStatus::failed;
      r.failure_reason = "surrogate: no base term for slot " + std::to_string(s);
      return r;
    }
    score += it->second;
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      auto it = surface.interactions.find({i, chosen[i], j, chosen[j]});
      if (it != surface.interactions.end()) score += it->second;
    }
  }
  for (const ParamBowl& bowl : surface.param_bowls) {
    for (std::size_t s = 0; s < pipeline.slots.size(); ++s) {
      if (!pipeline.slots[s].has_value()) continue;
      if (pipeline.slots[s]->component_id != bowl.component_id) continue;
      const double span = bowl.hi > bowl.lo ? bowl.hi - bowl.lo : 1.0;
      const double rel = (bowl_value(surface, bowl, *pipeline.slots[s]) - bowl.optimum) / span;
      score -= bowl.amplitude * rel * rel;
    }
  }
  if (surface.noise_sd > 0.0) {
    score += surface.noise_sd * hashed_normal(surface.noise_seed, pipeline_key(pipeline));
  }

  EvalResult r;
  r.status = EvalStatus::ok;
  r.oriented_score = score;
  r.raw_fold_scores = {score};
  return r;
}

EvaluateFn make_surrogate_evaluator(SurrogateSurface surface) {
  return [surface = std::move(surface)](const Pipeline& p) { return surrogate_eval(surface, p); };
}

namespace {

json choice_to_json(const std::optional<std::string>& c) {
  return c.has_value() ? json(*c) : json(nullptr);
}

std::optional<std::string> choice_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_string()) throw ConfigError("surface: candidate must be a string or null");
  return j.get<std::string>();
}

}  // namespace

std::string surface_to_json(const SurrogateSurface& surface) {
  json j;
  j["interaction_scale"] = surface.interaction_scale;
  j["noise_sd"] = surface.noise_sd;
  j["noise_seed"] = surface.noise_seed;
  j["base"] = json::array();
  for (const auto& [key, value] : surface.base) {
    j["base"].push_back({{"slot", key.first}, {"candidate", choice_to_json(key.second)},
                         {"value", value}});
  }
  j["interactions"] = json::array();
  for (const auto& [key, value] : surface.interactions) {
    j["interactions"].push_back({{"slot_a", std::get<0>(key)},
                                 {"candidate_a", choice_to_json(std::get<1>(key))},
                                 {"slot_b", std::get<2>(key)},
                                 {"candidate_b", choice_to_json(std::get<3>(key))},
                                 {"value", value}});
  }
  j["param_bowls"] = json::array();
  for (const ParamBowl& b : surface.param_bowls) {
    j["param_bowls"].push_back({{"component_id", b.component_id},
                                {"param", b.param},
                                {"optimum", b.optimum},
                                {"amplitude", b.amplitude},
                                {"lo", b.lo},
                                {"hi", b.hi},
                                {"default", b.default_value}});
  }
  return j.dump(2);
}

SurrogateSurface parse_surface(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("surface: not a JSON object");
  SurrogateSurface s;
  try {
    s.interaction_scale = j.at("interaction_scale").get<double>();
    s.noise_sd = j.at("noise_sd").get<double>();
    s.noise_seed = j.at("noise_seed").get<std::uint64_t>();
    for (const json& e : j.at("base")) {
      s.base[{e.at("slot").get<std::size_t>(), choice_from_json(e.at("candidate"))}] =
          e.at("value").get<double>();
    }
    for (const json& e : j.at("interactions")) {
      s.interactions[{e.at("slot_a").get<std::size_t>(), choice_from_json(e.at("candidate_a")),
                      e.at("slot_b").get<std::size_t>(), choice_from_json(e.at("candidate_b"))}] =
          e.at("value").get<double>();
    }
    for (const json& e : j.at("param_bowls")) {
      ParamBowl b;
      b.component_id = e.at("component_id").get<std::string>();
      b.param = e.at("param").get<std::string>();
      b.optimum = e.at("optimum").get<double>();
      b.amplitude = e.at("amplitude").get<double>();
      b.lo = e.at("lo").get<double>();
      b.hi = e.at("hi").get<double>();
      b.default_value = e.at("default").get<double>();
      s.param_bowls.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("surface: ") + e.what());
  }
  return s;
}

void save_surface(const SurrogateSurface& surface, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write surface file '" + path.string() + "'");
  out << surface_to_json(surface) << '\n';
}

SurrogateSurface load_surface(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open surface file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_surface(buf.str());
}

}  // namespace naiveml
