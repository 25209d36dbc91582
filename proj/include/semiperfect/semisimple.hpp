#pragma once

// The topologically semisimple quotient S = r / h: one row-finite matrix
// over the residue field per isomorphism class of summands. Compatible
// isomorphisms inside a class are the identity on the cyclic generator.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semiperfect/endo.hpp"
#include "semiperfect/fp_linalg.hpp"

namespace semiperfect {

struct SemisimpleBlock {
  LocalModule iso_class;
  std::vector<std::size_t> members;  // summand indices (finite modules)
  FpMatrix residue{2, 0, 0};         // |members| x |members|, finite modules
  PatternMatrix pattern;             // over F_p, omega modules
};

class SemisimpleElement {
 public:
  static SemisimpleElement zero(ModulePtr module);
  static SemisimpleElement identity(ModulePtr module);

  const ModulePtr& module_ptr() const { return module_; }
  const std::vector<SemisimpleBlock>& blocks() const { return blocks_; }
  std::vector<SemisimpleBlock>& blocks() { return blocks_; }
  bool is_finite() const { return !module_->is_omega(); }
  Coeff prime() const { return module_->ring().prime; }

  SemisimpleElement operator+(const SemisimpleElement& other) const;
  SemisimpleElement operator-(const SemisimpleElement& other) const;
  SemisimpleElement operator*(const SemisimpleElement& other) const;
  friend bool operator==(const SemisimpleElement& a, const SemisimpleElement& b);

  bool is_zero() const;
  bool is_idempotent() const;
  /// Total rank over the residue field; nullopt when infinite.
  std::optional<std::size_t> rank() const;
  /// Blockwise inverse (finite modules); nullopt when singular.
  std::optional<SemisimpleElement> inverse() const;
  /// Orthogonal rank-one idempotents summing to this idempotent, in canonical
  /// order (classes in order, then echelon pivots of the row space).
  /// Finite modules or finitary omega elements only.
  std::vector<SemisimpleElement> primitive_decomposition() const;

  std::string to_string() const;

 private:
  ModulePtr module_;
  std::vector<SemisimpleBlock> blocks_;
};

bool jacobson_membership(const EndoElement& h);
SemisimpleElement project_to_semisimple(const EndoElement& r);
/// Teichmueller-style lift: residue lambda becomes the constant scalar lambda
/// in same-class positions; cross-class blocks are zero.
EndoElement section_lift(const SemisimpleElement& s);

}  // namespace semiperfect
