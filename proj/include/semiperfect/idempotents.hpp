#pragma once

#include <cstddef>
#include <vector>

#include "semiperfect/endo.hpp"
#include "semiperfect/errors.hpp"
#include "semiperfect/family.hpp"
#include "semiperfect/invertibility.hpp"

namespace semiperfect {

/// The sum of a family that is complete modulo h is not invertible, so no
/// orthogonal family with the same residues can sum to 1.
class NonInvertibleSum : public Error {
 public:
  NonInvertibleSum(const std::string& what, NonInvertibilityCertificate certificate)
      : Error(what), certificate_(std::move(certificate)) {}
  const NonInvertibilityCertificate& certificate() const { return certificate_; }

 private:
  NonInvertibilityCertificate certificate_;
};

enum class IdempotentKind { kNotIdempotent, kIdempotent, kLocalIdempotent };
const char* to_string(IdempotentKind kind);

/// Local iff e is a nonzero idempotent with rank-one residue.
IdempotentKind classify_idempotent(const EndoElement& e);

struct HenselResult {
  EndoElement idempotent;
  /// Filtration degree of e^2 - e before each step.
  std::vector<unsigned> defect_degrees;
  std::size_t iterations = 0;
};

/// Newton iteration e <- 3e^2 - 2e^3 (truncated backend).
HenselResult hensel_lift_idempotent(const EndoElement& seed);

struct LiftResult {
  IdempotentFamily family;
  /// witnesses[w] solves targets[w] * x == family member w.
  std::vector<EndoElement> witnesses;
};

/// Orthogonal local idempotents e'_w in f'_w r lifting the residues of the
/// targets (truncated backend).
LiftResult lift_primitive_family(const std::vector<EndoElement>& targets);

/// Sequential corner lifting, left to right. Pattern families are only
/// accepted when already orthogonal or when their sum is provably not
/// invertible (NonInvertibleSum).
IdempotentFamily orthogonalize_finite_family(const EndoFamily& family);
IdempotentFamily orthogonalize_finite_family(const std::vector<EndoElement>& family);

struct SplitResult {
  IdempotentFamily family;
  /// remainders[k] = e - (members found so far) after chain step k; lies in I_k.
  std::vector<EndoElement> remainders;
};

SplitResult split_idempotent(const EndoElement& e, const std::vector<OpenIdealDescriptor>& chain);
/// Chain ann(M_0), ann(M_0 + M_1), ... up to the size of the module (or
/// `length` steps over omega).
std::vector<OpenIdealDescriptor> canonical_chain(const DecomposedModule& module, std::size_t length = 8);

/// Complete family of summand projectors.
IdempotentFamily certify_semiperfect(ModulePtr module);

/// Image of a family in End(M / t^m M)^op; zero images are dropped.
IdempotentFamily push_family_through_quotient(const IdempotentFamily& family, unsigned target_precision);

/// The module M / t^m M with its induced decomposition.
ModulePtr quotient_module(const DecomposedModule& module, unsigned target_precision);

}  // namespace semiperfect
