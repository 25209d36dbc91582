#include "semiperfect/endo.hpp"

#include <algorithm>
#include <sstream>

#include "semiperfect/errors.hpp"

namespace semiperfect {

namespace {

unsigned positive_part(long x) { return x > 0 ? static_cast<unsigned>(x) : 0; }

}  // namespace

unsigned composition_shift(unsigned a_j, unsigned a_i, unsigned a_l) {
  const long x = a_j, y = a_i, z = a_l;
  return positive_part(y - x) + positive_part(z - y) - positive_part(z - x);
}

EndoElement::EndoElement(ModulePtr module, std::vector<AdicScalar> entries)
    : module_(std::move(module)), n_(module_->size()), entries_(std::move(entries)) {
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      auto& e = entries_[j * n_ + i];
      e = e.reduce_mod_t_power(hom_block_shape(module_->summand(j), module_->summand(i)));
    }
  }
}

EndoElement::EndoElement(ModulePtr module, PatternMatrix body) : module_(std::move(module)), pattern_(std::move(body)) {
  if (!(pattern_.ring() == module_->ring())) throw Error("EndoElement: pattern ring mismatch");
}

EndoElement EndoElement::zero(ModulePtr module) {
  if (module->is_omega()) {
    auto ring = module->ring();
    return EndoElement(std::move(module), PatternMatrix::zero(ring));
  }
  const std::size_t n = module->size();
  return EndoElement(module, std::vector<AdicScalar>(n * n, AdicScalar::zero(module->ring())));
}

EndoElement EndoElement::identity(ModulePtr module) {
  if (module->is_omega()) {
    auto ring = module->ring();
    return EndoElement(std::move(module), PatternMatrix::identity(ring));
  }
  const std::size_t n = module->size();
  std::vector<AdicScalar> e(n * n, AdicScalar::zero(module->ring()));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = AdicScalar::one(module->ring());
  return EndoElement(module, std::move(e));
}

EndoElement EndoElement::from_entries(ModulePtr module, const std::vector<std::vector<AdicScalar>>& entries) {
  if (module->is_omega()) throw BackendUnsupported("from_entries: finite modules only");
  const std::size_t n = module->size();
  if (entries.size() != n) throw ValidationError("matrix has wrong number of rows for module");
  std::vector<AdicScalar> e;
  e.reserve(n * n);
  for (const auto& row : entries) {
    if (row.size() != n) throw ValidationError("matrix has wrong number of columns for module");
    for (const auto& v : row) {
      if (!(v.ring() == module->ring())) throw ValidationError("matrix entry over the wrong ring");
      e.push_back(v);
    }
  }
  return EndoElement(std::move(module), std::move(e));
}

EndoElement EndoElement::from_matrix(ModulePtr module, const ScalarMatrix& entries) {
  std::vector<std::vector<AdicScalar>> rows(entries.rows());
  for (std::size_t j = 0; j < entries.rows(); ++j) {
    for (std::size_t i = 0; i < entries.cols(); ++i) rows[j].push_back(entries.at(j, i));
  }
  return from_entries(std::move(module), rows);
}

EndoElement EndoElement::from_pattern(ModulePtr module, PatternMatrix body) {
  if (!module->is_omega()) throw BackendUnsupported("from_pattern: omega modules only");
  return EndoElement(std::move(module), std::move(body));
}

EndoElement EndoElement::matrix_unit(ModulePtr module, std::size_t j, std::size_t i, const AdicScalar& value) {
  if (module->is_omega()) {
    auto ring = module->ring();
    return EndoElement(std::move(module), PatternMatrix::sparse(ring, {SparseEntry{j, i, value}}));
  }
  const std::size_t n = module->size();
  std::vector<AdicScalar> e(n * n, AdicScalar::zero(module->ring()));
  e.at(j * n + i) = value;
  return EndoElement(std::move(module), std::move(e));
}

void EndoElement::check_same_module(const EndoElement& other) const {
  if (module_ != other.module_ && !(*module_ == *other.module_)) {
    throw Error("EndoElement: elements of different endomorphism rings");
  }
}

AdicScalar EndoElement::entry(std::size_t j, std::size_t i) const {
  if (!is_finite()) return pattern_.entry(j, i);
  return entries_.at(j * n_ + i);
}

const PatternMatrix& EndoElement::pattern() const {
  if (is_finite()) throw BackendUnsupported("pattern(): finite module");
  return pattern_;
}

ScalarMatrix EndoElement::to_matrix() const {
  if (!is_finite()) throw BackendUnsupported("to_matrix(): omega module");
  ScalarMatrix m(ring(), n_, n_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) m.at(j, i) = entries_[j * n_ + i];
  }
  return m;
}

bool EndoElement::row_is_zero(std::size_t j) const {
  if (!is_finite()) return pattern_.row_is_zero(j);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!entries_[j * n_ + i].is_zero()) return false;
  }
  return true;
}

bool EndoElement::is_zero() const {
  if (!is_finite()) return pattern_.is_zero();
  return std::all_of(entries_.begin(), entries_.end(), [](const AdicScalar& v) { return v.is_zero(); });
}

EndoElement EndoElement::operator-() const {
  if (!is_finite()) return EndoElement(module_, -pattern_);
  std::vector<AdicScalar> e = entries_;
  for (auto& v : e) v = -v;
  return EndoElement(module_, std::move(e));
}

EndoElement EndoElement::operator+(const EndoElement& other) const {
  check_same_module(other);
  if (!is_finite()) return EndoElement(module_, pattern_ + other.pattern_);
  std::vector<AdicScalar> e = entries_;
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += other.entries_[k];
  return EndoElement(module_, std::move(e));
}

EndoElement EndoElement::operator-(const EndoElement& other) const { return *this + (-other); }

EndoElement EndoElement::operator*(const EndoElement& other) const {
  check_same_module(other);
  if (!is_finite()) return EndoElement(module_, pattern_ * other.pattern_);
  const DecomposedModule& m = *module_;
  std::vector<AdicScalar> e(n_ * n_, AdicScalar::zero(ring()));
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      const AdicScalar& a = entries_[j * n_ + i];
      if (a.is_zero()) continue;
      for (std::size_t l = 0; l < n_; ++l) {
        const AdicScalar& b = other.entries_[i * n_ + l];
        if (b.is_zero()) continue;
        const unsigned shift = composition_shift(m.exponent(j), m.exponent(i), m.exponent(l));
        e[j * n_ + l] += (a * b).times_t_power(shift);
      }
    }
  }
  return EndoElement(module_, std::move(e));
}

EndoElement compose(const EndoElement& r, const EndoElement& s) { return r * s; }

EndoElement EndoElement::scaled(long long c) const {
  const AdicScalar k = AdicScalar::from_int(ring(), c);
  if (!is_finite()) return EndoElement(module_, pattern_.scaled(k));
  std::vector<AdicScalar> e = entries_;
  for (auto& v : e) v *= k;
  return EndoElement(module_, std::move(e));
}

EndoElement EndoElement::transpose() const {
  if (!is_finite()) throw BackendUnsupported("transpose(): finite modules only");
  std::vector<AdicScalar> e(n_ * n_, AdicScalar::zero(ring()));
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) e[i * n_ + j] = entries_[j * n_ + i];
  }
  return EndoElement(module_, std::move(e));
}

EndoElement EndoElement::reduce_precision(ModulePtr coarser) const {
  if (!is_finite() || coarser->is_omega()) throw BackendUnsupported("reduce_precision: truncated backend only");
  const unsigned m = coarser->ring().precision;
  if (coarser->size() != n_ || m > ring().precision) throw ValidationError("reduce_precision: incompatible module");
  std::vector<AdicScalar> e;
  e.reserve(n_ * n_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      const long a = module_->exponent(j), b = module_->exponent(i);
      const long a2 = coarser->exponent(j), b2 = coarser->exponent(i);
      if (a2 != std::min<long>(a, m) || b2 != std::min<long>(b, m)) {
        throw ValidationError("reduce_precision: coarser module is not M / t^m M");
      }
      const unsigned shift = positive_part(b - a) - positive_part(b2 - a2);
      e.push_back(entries_[j * n_ + i].times_t_power(shift).to_precision(m));
    }
  }
  return EndoElement(std::move(coarser), std::move(e));
}

bool operator==(const EndoElement& a, const EndoElement& b) {
  if (a.module_ != b.module_ && !(*a.module_ == *b.module_)) return false;
  if (!a.is_finite()) return a.pattern_ == b.pattern_;
  return a.entries_ == b.entries_;
}

std::string EndoElement::to_string() const {
  if (!is_finite()) return pattern_.to_string();
  return to_matrix().to_string();
}

OpenIdealDescriptor OpenIdealDescriptor::prefix(std::size_t k) {
  OpenIdealDescriptor d;
  for (std::size_t i = 0; i <= k; ++i) d.generators.push_back(i);
  return d;
}

bool vanishes_on(const EndoElement& x, const OpenIdealDescriptor& ideal) {
  return std::all_of(ideal.generators.begin(), ideal.generators.end(),
                     [&](std::size_t j) { return x.row_is_zero(j); });
}

EndoElement summand_projector(ModulePtr module, const std::vector<std::size_t>& indices) {
  const RingDescriptor ring = module->ring();
  if (module->is_omega()) {
    std::vector<SparseEntry> entries;
    for (std::size_t j : indices) entries.push_back(SparseEntry{j, j, AdicScalar::one(ring)});
    return EndoElement::from_pattern(std::move(module), PatternMatrix::sparse(ring, entries));
  }
  EndoElement result = EndoElement::zero(module);
  for (std::size_t j : indices) result = result + EndoElement::matrix_unit(module, j, j, AdicScalar::one(ring));
  return result;
}

unsigned filtration_degree(const EndoElement& x) {
  unsigned best = kInfiniteValuation;
  if (!x.is_finite()) {
    const PatternMatrix& p = x.pattern();
    for (const auto& [d, v] : p.steady()) best = std::min(best, 2 * v.valuation());
    for (const auto& row : p.head_rows()) {
      for (const auto& [c, v] : row) best = std::min(best, 2 * v.valuation());
    }
    return best;
  }
  const std::size_t n = x.dimension();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const AdicScalar v = x.entry(j, i);
      if (v.is_zero()) continue;
      const long a = x.module().exponent(j), b = x.module().exponent(i);
      best = std::min(best, 2 * v.valuation() + static_cast<unsigned>(a > b ? a - b : b - a));
    }
  }
  return best;
}

}  // namespace semiperfect
