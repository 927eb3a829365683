#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace naiveml {

enum class SlotRole { data_preprocessor, feature_preprocessor, predictor };

std::string to_string(SlotRole role);
SlotRole slot_role_from_string(const std::string& s);  // throws ConfigError

enum class ParamKind { real, integer, categorical };

std::string to_string(ParamKind kind);

// Concrete parameter value: double for real, int64 for integer, string for
// categorical. Stored with the kind the spec declares, coerced on load.
using ParamValue = std::variant<double, std::int64_t, std::string>;

std::string to_string(const ParamValue& v);

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::real;
  // Bounds for real/integer, inclusive on both ends.
  double lo = 0.0;
  double hi = 0.0;
  bool log_scale = false;               // real only; demands lo > 0
  std::vector<std::string> choices;     // categorical only, non-empty
  // Absent only in malformed catalogs; validate_catalog flags it. Defaults
  // are never invented.
  std::optional<ParamValue> default_value;
};

struct ComponentSpec {
  std::string id;
  SlotRole role = SlotRole::predictor;
  std::vector<ParamSpec> params;
  // Selects the backing implementation; see known_implementation_keys().
  std::string implementation_key;

  const ParamSpec* find_param(const std::string& name) const;
};

struct CatalogSlot {
  SlotRole role = SlotRole::predictor;
  std::vector<ComponentSpec> candidates;
};

// Ordered search space. Exactly one slot has the predictor role;
// pre-processor roles may repeat. standard_predictor names one of the
// predictor slot's candidates.
struct Catalog {
  std::vector<CatalogSlot> slots;
  std::string standard_predictor;

  std::size_t predictor_slot() const;   // throws std::logic_error if absent
  bool is_pre_slot(std::size_t slot) const;
  const ComponentSpec* find(std::size_t slot, const std::string& id) const;
  const ComponentSpec& standard_predictor_spec() const;
};

// Returns human-readable violations; an empty list means valid. Violations
// are data, not failures: duplicate component ids, missing or duplicated
// predictor slot, unknown standard_predictor, bad bounds (lo > hi),
// log_scale with lo <= 0, empty categorical choices, missing defaults,
// defaults outside their domain, params on the wrong kind, empty slots.
std::vector<std::string> validate_catalog(const Catalog& c);

// Strict JSON ingestion: unknown fields are rejected (ConfigError), as are
// type mismatches. Shape:
//   { "slots": [ { "role": ..., "candidates": [ { "id", "implementation_key",
//     "params": [ { "name", "kind", ... } ] } ] } ],
//     "standard_predictor": "..." }
// Loading does not validate; callers decide what to do with violations.
Catalog parse_catalog(const std::string& json_text);
Catalog load_catalog(const std::filesystem::path& path);  // IoError on open failure
std::string catalog_to_json(const Catalog& c);            // round-trips through parse_catalog

}  // namespace naiveml
