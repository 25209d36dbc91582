#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semiperfect/endo.hpp"
#include "semiperfect/fp_linalg.hpp"

namespace semiperfect {

/// Evidence that an element is not invertible.
///
/// Truncated backend: a nonzero residue row vector killed by the residue of u.
/// Pattern backend (support growth): u is upper triangular with unit diagonal,
/// so x * u = b_row has exactly one solution in the product A^omega, found by
/// forward substitution. support_sizes[n-1] is the support of that solution
/// inside the window reached at level n and is >= n, so the solution is not
/// finitely supported and b_row is outside the image of u.
struct NonInvertibilityCertificate {
  std::string reason;
  std::optional<std::size_t> row;
  long band_offset = 0;
  std::vector<std::size_t> support_sizes;
  std::vector<AdicScalar> solution;  // deepest window
  std::size_t iso_class = 0;
  FpVector residue_kernel;
};

struct Invertible {
  EndoElement inverse;
};
struct NotInvertible {
  NonInvertibilityCertificate certificate;
};
struct Unknown {
  std::string reason;
};
using InvertibilityDecision = std::variant<Invertible, NotInvertible, Unknown>;

/// Always decides over the truncated backend. Over the pattern backend:
/// Invertible when the off-diagonal part is nilpotent, NotInvertible with a
/// support-growth certificate when it is a single steady band of positive
/// offset over a strictly upper triangular perturbation, Unknown otherwise.
InvertibilityDecision decide_invertible(const EndoElement& u, std::size_t certificate_levels = 8);

/// Re-runs the forward substitution behind a pattern certificate.
bool verify_support_growth(const EndoElement& u, const NonInvertibilityCertificate& certificate);

/// Some g with (x * u) * g == x for every x in the span of the summands in
/// `ideal`, or nullopt when none exists.
std::optional<EndoElement> is_locally_split_mono(const EndoElement& u, const OpenIdealDescriptor& ideal);

}  // namespace semiperfect
