#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/rng.hpp"

namespace naiveml {

// Parameter assignment for one chosen component. use_defaults set means the
// explicit "evaluate at declared defaults" marker of the search; values is
// then empty. Otherwise values maps every declared parameter by name.
struct ParamAssignment {
  bool use_defaults = true;
  std::map<std::string, ParamValue> values;

  static ParamAssignment defaults_marker() { return {}; }
  static ParamAssignment with_values(std::map<std::string, ParamValue> v) {
    return {false, std::move(v)};
  }

  bool operator==(const ParamAssignment&) const = default;
};

struct SlotChoice {
  std::string component_id;
  ParamAssignment params;

  bool operator==(const SlotChoice&) const = default;
};

// One entry per catalog slot, same order. nullopt is Blank (slot skipped);
// only pre-processor slots may be Blank.
struct Pipeline {
  std::vector<std::optional<SlotChoice>> slots;

  bool operator==(const Pipeline&) const = default;
};

// Explicit assignment holding every declared default. Throws ConfigError if
// the spec omits a default.
ParamAssignment default_params(const ComponentSpec& spec);

// Independent uniform draws: real on [lo, hi] (log-space when log_scale),
// integer inclusive on both bounds, categorical uniform over choices.
ParamAssignment sample_params(const ComponentSpec& spec, Rng& rng);

// Declared defaults overlaid with any explicit values; what fit-time code
// actually reads.
std::map<std::string, ParamValue> resolve_params(const ComponentSpec& spec,
                                                 const ParamAssignment& a);

// Structural check against a catalog: slot count, known component ids, roles
// matching slots, Blank only on pre-processor slots, explicit values naming
// declared params with in-domain values. Empty list means well-formed.
std::vector<std::string> validate_pipeline(const Pipeline& p, const Catalog& c);

// Canonical text form; equal pipelines produce equal keys. Used for caching
// and for hashing surrogate noise.
std::string pipeline_key(const Pipeline& p);

// Human-readable one-liner for logs and CLI output.
std::string describe(const Pipeline& p);

}  // namespace naiveml
