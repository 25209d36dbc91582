#pragma once

// Over the truncated backend the ring r = End(M)^op is a finite-dimensional
// F_p-algebra. EndoBasis fixes the basis {t^m at block (j, i)} and converts
// elements to coordinate vectors, so that one-sided ideals, submodules and
// linear equations in r become F_p linear algebra.

#include <cstddef>
#include <optional>
#include <vector>

#include "semiperfect/endo.hpp"
#include "semiperfect/fp_linalg.hpp"

namespace semiperfect {

class EndoBasis {
 public:
  explicit EndoBasis(ModulePtr module);

  std::size_t dimension() const { return slots_.size(); }
  const ModulePtr& module_ptr() const { return module_; }
  Coeff prime() const { return module_->ring().prime; }

  FpVector coordinates(const EndoElement& x) const;
  EndoElement element(const FpVector& coords) const;
  const EndoElement& basis_element(std::size_t k) const { return basis_[k]; }
  /// Basis elements lying in the topological Jacobson radical (they span it).
  const std::vector<std::size_t>& radical_indices() const { return radical_; }

 private:
  struct Slot {
    std::size_t row;
    std::size_t col;
    unsigned power;
  };
  ModulePtr module_;
  std::vector<Slot> slots_;
  std::vector<EndoElement> basis_;
  std::vector<std::size_t> radical_;
};

enum class Side { kRight, kLeft };

/// Some x with a * x == b (Side::kRight) or x * a == b (Side::kLeft).
std::optional<EndoElement> solve_linear(const EndoBasis& basis, const EndoElement& a, const EndoElement& b,
                                        Side side);

/// F_p span of {a * B_k} (right ideal a r) or {B_k * a} (left ideal r a).
FpSpan principal_ideal(const EndoBasis& basis, const EndoElement& a, Side side);

}  // namespace semiperfect
