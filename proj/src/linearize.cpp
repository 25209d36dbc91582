#include "semiperfect/linearize.hpp"

#include "semiperfect/errors.hpp"
#include "semiperfect/semisimple.hpp"

namespace semiperfect {

EndoBasis::EndoBasis(ModulePtr module) : module_(std::move(module)) {
  if (module_->is_omega()) throw BackendUnsupported("EndoBasis: truncated backend only");
  const std::size_t n = module_->size();
  const RingDescriptor ring = module_->ring();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned len = hom_block_shape(module_->summand(j), module_->summand(i));
      for (unsigned m = 0; m < len; ++m) {
        slots_.push_back({j, i, m});
        basis_.push_back(EndoElement::matrix_unit(module_, j, i, AdicScalar::monomial(ring, 1, m)));
        if (jacobson_membership(basis_.back())) radical_.push_back(basis_.size() - 1);
      }
    }
  }
}

FpVector EndoBasis::coordinates(const EndoElement& x) const {
  FpVector v(slots_.size(), 0);
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const Slot& s = slots_[k];
    v[k] = x.entry(s.row, s.col).coefficient(s.power);
  }
  return v;
}

EndoElement EndoBasis::element(const FpVector& coords) const {
  const std::size_t n = module_->size();
  const RingDescriptor ring = module_->ring();
  std::vector<std::vector<AdicScalar>> entries(n, std::vector<AdicScalar>(n, AdicScalar::zero(ring)));
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (coords[k] == 0) continue;
    const Slot& s = slots_[k];
    entries[s.row][s.col] += AdicScalar::monomial(ring, coords[k], s.power);
  }
  return EndoElement::from_entries(module_, entries);
}

std::optional<EndoElement> solve_linear(const EndoBasis& basis, const EndoElement& a, const EndoElement& b,
                                        Side side) {
  FpSpan span(basis.prime(), basis.dimension(), true);
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    const EndoElement& e = basis.basis_element(k);
    span.insert(basis.coordinates(side == Side::kRight ? a * e : e * a));
  }
  auto coeffs = span.express(basis.coordinates(b));
  if (!coeffs) return std::nullopt;
  return basis.element(*coeffs);
}

FpSpan principal_ideal(const EndoBasis& basis, const EndoElement& a, Side side) {
  FpSpan span(basis.prime(), basis.dimension());
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    const EndoElement& e = basis.basis_element(k);
    span.insert(basis.coordinates(side == Side::kRight ? a * e : e * a));
  }
  return span;
}

}  // namespace semiperfect
