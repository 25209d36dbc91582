#pragma once

// JSON file formats. Every parse function throws ParseError on malformed
// input and ValidationError on well-formed input that breaks an invariant.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "semiperfect/covers.hpp"
#include "semiperfect/duality.hpp"
#include "semiperfect/family.hpp"
#include "semiperfect/module.hpp"

namespace semiperfect::io {

using Json = nlohmann::ordered_json;

Json read_json(const std::filesystem::path& path);
/// Writes through a temporary file and a rename.
void write_json(const std::filesystem::path& path, const Json& value);

/// {"p": 2, "N": 4} (truncated) or {"p": 2} (pattern).
RingDescriptor ring_from_json(const Json& j);
Json ring_to_json(const RingDescriptor& ring);

AdicScalar scalar_from_json(const RingDescriptor& ring, const Json& j);
inline Json scalar_to_json(const AdicScalar& x) { return x.to_string(); }

/// {"ring": ..., "summands": [{"torsion": 1}, ...]} or
/// {"ring": {"p": 2}, "pattern": "free^omega"}. The ring may be omitted when
/// `fallback` is given.
ModulePtr module_from_json(const Json& j, const std::optional<RingDescriptor>& fallback = std::nullopt);
Json module_to_json(const DecomposedModule& m);

/// {"ring": ..., "matrix": [[...]]} or a bare nested array with a fallback ring.
ScalarMatrix presentation_from_json(const Json& j, const std::optional<RingDescriptor>& fallback = std::nullopt);
Json scalar_matrix_to_json(const ScalarMatrix& m);

PatternMatrix pattern_from_json(const RingDescriptor& ring, const Json& j);
Json pattern_to_json(const PatternMatrix& m);

/// {"module": ..., "entries": [[...]]} or {"module": ..., "bands": [...], "sparse": [...]}.
/// With `module` given, the "module" key is optional.
EndoElement endo_from_json(const Json& j, ModulePtr module = nullptr,
                           const std::optional<RingDescriptor>& fallback = std::nullopt);
/// Body only (entries or bands/sparse).
Json endo_body_to_json(const EndoElement& x);
Json endo_to_json(const EndoElement& x);

/// {"module": ..., "members": [...], "tail": {"template": [[j, i, v]], "from": b},
///  "complete": true}
IdempotentFamily family_from_json(const Json& j, const std::optional<RingDescriptor>& fallback = std::nullopt);
Json family_to_json(const IdempotentFamily& f);

/// {"module": ..., "generators": [...], "relations": [[...], ...], "side": "right"}
FgDiscreteModule fg_module_from_json(const Json& j, const std::optional<RingDescriptor>& fallback = std::nullopt);
Json fg_module_to_json(const FgDiscreteModule& m);

FormalFamily formal_family_from_json(const RingDescriptor& ring, const Json& j);
Json formal_family_to_json(const FormalFamily& f);

/// {"rows": "Y", "cols": "X", "orientation": "contra", "ring": ..., one of
///  "entries" | "bands"/"sparse" | "row_families"} or, over r,
/// {"module": ..., "grid": [[matrix body, ...], ...]}.
DualityMatrix duality_from_json(const Json& j, const std::optional<RingDescriptor>& fallback = std::nullopt);
Json duality_to_json(const DualityMatrix& m);

}  // namespace semiperfect::io
