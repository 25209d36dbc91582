#pragma once

// Modules over the base ring decomposed into cyclic summands with local
// endomorphism rings: M = (+)_z M_z with M_z = R/t^k (truncated backend) or
// M_z = A (pattern backend, countably many copies).

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "semiperfect/adic.hpp"
#include "semiperfect/scalar_matrix.hpp"

namespace semiperfect {

struct LocalModule {
  enum class Kind { kTorsion, kFree };
  Kind kind = Kind::kTorsion;
  unsigned exponent = 1;  // k in R/t^k; unused for kFree

  static LocalModule torsion(unsigned k) { return {Kind::kTorsion, k}; }
  static LocalModule free() { return {Kind::kFree, 0}; }
  bool is_free() const { return kind == Kind::kFree; }
  std::string label() const;

  friend bool operator==(const LocalModule&, const LocalModule&) = default;
};

struct IsoClass {
  LocalModule key;
  std::vector<std::size_t> members;  // summand indices; empty for the omega class
};

class DecomposedModule {
 public:
  /// Finite sum of torsion summands over a truncated ring; validates 1 <= k <= N.
  static DecomposedModule finite(const RingDescriptor& ring, std::vector<LocalModule> summands);
  /// The countable free module A^(omega) over the pattern ring.
  static DecomposedModule free_omega(const RingDescriptor& ring);

  const RingDescriptor& ring() const { return ring_; }
  bool is_omega() const { return omega_; }
  /// Number of summands (finite modules only).
  std::size_t size() const;
  const LocalModule& summand(std::size_t i) const;
  const std::vector<LocalModule>& summands() const { return summands_; }
  /// Exponent k of summand i; N-independent sentinel for free summands.
  unsigned exponent(std::size_t i) const { return summand(i).exponent; }

  /// Fibers of the isomorphism-class map, ordered by first occurrence.
  std::vector<IsoClass> iso_classes() const;
  std::size_t class_of(std::size_t i) const;
  bool same_class(std::size_t i, std::size_t j) const { return summand(i) == summand(j); }

  std::string to_string() const;
  friend bool operator==(const DecomposedModule&, const DecomposedModule&) = default;

 private:
  RingDescriptor ring_;
  std::vector<LocalModule> summands_;
  bool omega_ = false;
  LocalModule tail_ = LocalModule::free();
};

using ModulePtr = std::shared_ptr<const DecomposedModule>;

inline constexpr unsigned kFullRankHom = std::numeric_limits<unsigned>::max();

/// Length of the cyclic module Hom(src, dst): min(a, b) for torsion modules,
/// kFullRankHom for Free -> Free, 0 for Torsion -> Free, b for Free -> Torsion(b).
unsigned hom_block_shape(const LocalModule& src, const LocalModule& dst);

struct SmithResult {
  DecomposedModule module;
  ScalarMatrix diagonal;      // row_transform * presentation * col_transform
  ScalarMatrix row_transform;
  ScalarMatrix row_inverse;
  ScalarMatrix col_transform;
  ScalarMatrix col_inverse;
  /// Row of `diagonal` (new generator of the free module) carrying summand i.
  std::vector<std::size_t> summand_rows;
};

/// Smith normal form of a presentation over R_N. The module is the cokernel
/// of `presentation` acting on the free module of rank rows(); columns are
/// relations. Pivot: minimal valuation, ties by (row, column). Throws
/// BackendUnsupported for pattern-ring input.
SmithResult smith_decompose(const ScalarMatrix& presentation);

}  // namespace semiperfect
