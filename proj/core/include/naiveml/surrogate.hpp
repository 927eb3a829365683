#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/evaluate.hpp"
#include "naiveml/pipeline.hpp"

namespace naiveml {

// Candidate key inside a surface: slot index plus component id, nullopt for
// Blank.
using SurrogateChoice = std::pair<std::size_t, std::optional<std::string>>;

struct ParamBowl {
  std::string component_id;
  std::string param;
  double optimum = 0.0;
  double amplitude = 0.0;
  // Captured from the catalog so a serialized surface stands alone.
  double lo = 0.0;
  double hi = 1.0;
  double default_value = 0.0;
};

// Closed-form pipeline quality surface:
//   score = sum of base terms (one per filled slot, Blank included)
//         + sum of interaction entries over chosen pairs (slot_i < slot_j)
//         - sum of bowl penalties amplitude * ((value - optimum)/(hi - lo))^2
//         + Gaussian noise (zero when noise_sd == 0).
// Interaction entries already carry the construction-time scale;
// interaction_scale records the epsilon that was applied. Noise is a pure
// function of (noise_seed, pipeline), so the surface stays deterministic.
struct SurrogateSurface {
  std::map<SurrogateChoice, double> base;
  std::map<std::tuple<std::size_t, std::optional<std::string>, std::size_t,
                      std::optional<std::string>>,
           double>
      interactions;
  std::vector<ParamBowl> param_bowls;
  double interaction_scale = 0.0;
  double noise_sd = 0.0;
  std::uint64_t noise_seed = 0;
};

// Slot blueprint for synthetic catalogs: `candidates` per slot, each with
// `real_params` uniform real params on [0, 1], default 0.5.
struct SurrogateSlotShape {
  SlotRole role = SlotRole::predictor;
  std::size_t candidates = 2;
  std::size_t real_params = 0;
};

// Builds a catalog whose component ids are "s<slot>_c<index>"; the first
// candidate of the predictor slot becomes the standard predictor.
Catalog make_surrogate_catalog(const std::vector<SurrogateSlotShape>& shapes);

// Draws a surface for `catalog`: base terms uniform [0, 1] for every
// candidate and for Blank on every pre-processor slot; one interaction entry
// per cross-slot candidate pair (Blank included), uniform [-1, 1] times
// interaction_scale; one bowl per real param with the optimum uniform in its
// range and amplitude uniform in [amp_lo, amp_hi]. Deterministic in seed.
SurrogateSurface make_surface(const Catalog& catalog, double interaction_scale, double amp_lo,
                              double amp_hi, std::uint64_t seed, double noise_sd = 0.0);

// Evaluates the closed form. Always status ok, zero wall time; the surface
// knows defaults, so use_defaults markers resolve without the catalog.
EvalResult surrogate_eval(const SurrogateSurface& surface, const Pipeline& pipeline);

EvaluateFn make_surrogate_evaluator(SurrogateSurface surface);

void save_surface(const SurrogateSurface& surface, const std::filesystem::path& path);
SurrogateSurface load_surface(const std::filesystem::path& path);
std::string surface_to_json(const SurrogateSurface& surface);
SurrogateSurface parse_surface(const std::string& json_text);

}  // namespace naiveml
