#pragma once

// Elements of the topological ring r = End(M)^op of a decomposed module.
//
// Convention: elements act on the right of row vectors, so entry (j, i) is
// the block map M_j -> M_i and (r * s) means "first r, then s". For
// torsion summands R/t^a -> R/t^b the block is stored as one scalar c
// (reduced mod t^min(a,b)) standing for the map 1 |-> c * t^max(0, b - a).

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "semiperfect/adic.hpp"
#include "semiperfect/module.hpp"
#include "semiperfect/pattern_matrix.hpp"
#include "semiperfect/scalar_matrix.hpp"

namespace semiperfect {

class EndoElement {
 public:
  static EndoElement zero(ModulePtr module);
  static EndoElement identity(ModulePtr module);
  /// Finite modules: entries[j][i] is the block M_j -> M_i (reduced on construction).
  static EndoElement from_entries(ModulePtr module, const std::vector<std::vector<AdicScalar>>& entries);
  static EndoElement from_matrix(ModulePtr module, const ScalarMatrix& entries);
  /// Omega modules only.
  static EndoElement from_pattern(ModulePtr module, PatternMatrix body);
  static EndoElement matrix_unit(ModulePtr module, std::size_t j, std::size_t i, const AdicScalar& value);

  const ModulePtr& module_ptr() const { return module_; }
  const DecomposedModule& module() const { return *module_; }
  const RingDescriptor& ring() const { return module_->ring(); }
  bool is_finite() const { return !module_->is_omega(); }
  std::size_t dimension() const { return n_; }

  AdicScalar entry(std::size_t j, std::size_t i) const;
  /// Omega modules only.
  const PatternMatrix& pattern() const;
  /// Finite modules only.
  ScalarMatrix to_matrix() const;
  bool row_is_zero(std::size_t j) const;
  bool is_zero() const;

  EndoElement operator-() const;
  EndoElement operator+(const EndoElement& other) const;
  EndoElement operator-(const EndoElement& other) const;
  /// compose(r, s): first r, then s.
  EndoElement operator*(const EndoElement& other) const;
  EndoElement scaled(long long c) const;
  /// Anti-automorphism of the finite ring: block (j, i) <-> block (i, j).
  EndoElement transpose() const;
  /// Image in End(M / t^m M) for m < N (finite modules).
  EndoElement reduce_precision(ModulePtr coarser) const;

  friend bool operator==(const EndoElement& a, const EndoElement& b);
  std::string to_string() const;

 private:
  EndoElement(ModulePtr module, std::vector<AdicScalar> entries);
  EndoElement(ModulePtr module, PatternMatrix body);
  void check_same_module(const EndoElement& other) const;

  ModulePtr module_;
  std::size_t n_ = 0;
  std::vector<AdicScalar> entries_;  // n x n, finite modules
  PatternMatrix pattern_;            // omega modules
};

EndoElement compose(const EndoElement& r, const EndoElement& s);

/// Extra power of t picked up when composing M_j -> M_i -> M_l, relative to
/// the generator of Hom(M_j, M_l).
unsigned composition_shift(unsigned a_j, unsigned a_i, unsigned a_l);

/// The open right ideal of elements whose rows indexed by `generators` vanish
/// (the annihilator of the submodule spanned by those summands).
struct OpenIdealDescriptor {
  std::vector<std::size_t> generators;

  /// ann(M_0 + ... + M_k)
  static OpenIdealDescriptor prefix(std::size_t k);
};

bool vanishes_on(const EndoElement& x, const OpenIdealDescriptor& ideal);

/// Projector onto the summands listed in `ideal` (diagonal 0/1 matrix).
EndoElement summand_projector(ModulePtr module, const std::vector<std::size_t>& indices);

/// Submultiplicative filtration degree: min over nonzero blocks of
/// 2*val(c) + |a_j - a_i| (2*val(c) on omega modules); kInfiniteValuation for 0.
/// Elements of the topological Jacobson radical have degree >= 1 and every
/// nonzero element has degree < 2N.
unsigned filtration_degree(const EndoElement& x);

}  // namespace semiperfect
