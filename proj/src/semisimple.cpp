#include "semiperfect/semisimple.hpp"

#include <algorithm>
#include <sstream>

#include "semiperfect/errors.hpp"

namespace semiperfect {

namespace {

AdicScalar residue_scalar(const AdicScalar& v) {
  return AdicScalar::from_int(RingDescriptor::residue_field(v.ring().prime), v.residue());
}

// Dense window of a finitary F_p pattern matrix.
FpMatrix finitary_window(const PatternMatrix& m, std::size_t size) {
  FpMatrix w(m.ring().prime, size, size);
  for (std::size_t r = 0; r < m.head_rows().size(); ++r) {
    for (const auto& [c, v] : m.head_rows()[r]) w.at(r, c) = v.residue();
  }
  return w;
}

std::size_t finitary_extent(const PatternMatrix& m) {
  std::size_t size = m.threshold();
  for (const auto& row : m.head_rows()) {
    for (const auto& [c, v] : row) size = std::max(size, c + 1);
  }
  return size;
}

PatternMatrix window_to_pattern(const FpMatrix& w) {
  const RingDescriptor field = RingDescriptor::residue_field(w.prime());
  std::vector<SparseEntry> entries;
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (w.at(r, c) != 0) entries.push_back(SparseEntry{r, c, AdicScalar::from_int(field, w.at(r, c))});
    }
  }
  return PatternMatrix::sparse(field, entries);
}

// Rank-one orthogonal idempotents summing to the idempotent g.
std::vector<FpMatrix> decompose_idempotent(const FpMatrix& g) {
  const Coeff p = g.prime();
  const std::size_t m = g.rows();
  FpSpan span(p, m, true);
  std::vector<FpVector> basis_rows;
  for (std::size_t k = 0; k < m; ++k) {
    if (span.insert(g.row(k))) basis_rows.push_back(g.row(k));
  }
  // Re-express every row of g in the chosen rows (tracked generators are
  // exactly the inserted rows, dependent ones included).
  FpSpan chosen(p, m, true);
  for (const auto& r : basis_rows) chosen.insert(r);
  std::vector<FpMatrix> parts;
  for (std::size_t i = 0; i < basis_rows.size(); ++i) parts.emplace_back(p, m, m);
  for (std::size_t k = 0; k < m; ++k) {
    auto coords = chosen.express(g.row(k));
    if (!coords) throw std::logic_error("decompose_idempotent: row outside its own span");
    for (std::size_t i = 0; i < basis_rows.size(); ++i) {
      const Coeff c = (*coords)[i];
      if (c == 0) continue;
      for (std::size_t col = 0; col < m; ++col) parts[i].at(k, col) = fp::mul(c, basis_rows[i][col], p);
    }
  }
  return parts;
}

}  // namespace

SemisimpleElement SemisimpleElement::zero(ModulePtr module) {
  SemisimpleElement s;
  const Coeff p = module->ring().prime;
  for (const auto& cls : module->iso_classes()) {
    SemisimpleBlock b;
    b.iso_class = cls.key;
    b.members = cls.members;
    b.residue = FpMatrix(p, cls.members.size(), cls.members.size());
    b.pattern = PatternMatrix::zero(RingDescriptor::residue_field(p));
    s.blocks_.push_back(std::move(b));
  }
  s.module_ = std::move(module);
  return s;
}

SemisimpleElement SemisimpleElement::identity(ModulePtr module) {
  SemisimpleElement s = zero(std::move(module));
  const Coeff p = s.prime();
  for (auto& b : s.blocks_) {
    b.residue = FpMatrix::identity(p, b.members.size());
    if (!s.is_finite()) b.pattern = PatternMatrix::identity(RingDescriptor::residue_field(p));
  }
  return s;
}

SemisimpleElement SemisimpleElement::operator+(const SemisimpleElement& other) const {
  SemisimpleElement r = *this;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    r.blocks_[k].residue = blocks_[k].residue + other.blocks_[k].residue;
    r.blocks_[k].pattern = blocks_[k].pattern + other.blocks_[k].pattern;
  }
  return r;
}

SemisimpleElement SemisimpleElement::operator-(const SemisimpleElement& other) const {
  SemisimpleElement neg = other;
  const Coeff p = prime();
  for (auto& b : neg.blocks_) {
    for (std::size_t i = 0; i < b.residue.rows(); ++i) {
      for (std::size_t j = 0; j < b.residue.cols(); ++j) b.residue.at(i, j) = fp::sub(0, b.residue.at(i, j), p);
    }
    b.pattern = -b.pattern;
  }
  return *this + neg;
}

SemisimpleElement SemisimpleElement::operator*(const SemisimpleElement& other) const {
  SemisimpleElement r = *this;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    r.blocks_[k].residue = blocks_[k].residue * other.blocks_[k].residue;
    r.blocks_[k].pattern = blocks_[k].pattern * other.blocks_[k].pattern;
  }
  return r;
}

bool operator==(const SemisimpleElement& a, const SemisimpleElement& b) {
  if (a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) {
    if (!(a.blocks_[k].residue == b.blocks_[k].residue) || !(a.blocks_[k].pattern == b.blocks_[k].pattern)) {
      return false;
    }
  }
  return true;
}

bool SemisimpleElement::is_zero() const { return *this == zero(module_); }

bool SemisimpleElement::is_idempotent() const { return *this * *this == *this; }

std::optional<std::size_t> SemisimpleElement::rank() const {
  std::size_t total = 0;
  for (const auto& b : blocks_) {
    if (is_finite()) {
      total += b.residue.rank();
    } else {
      if (!b.pattern.is_finitary()) return std::nullopt;
      total += finitary_window(b.pattern, finitary_extent(b.pattern)).rank();
    }
  }
  return total;
}

std::optional<SemisimpleElement> SemisimpleElement::inverse() const {
  if (!is_finite()) return std::nullopt;
  SemisimpleElement r = *this;
  for (auto& b : r.blocks_) {
    auto inv = b.residue.inverse();
    if (!inv) return std::nullopt;
    b.residue = *inv;
  }
  return r;
}

std::vector<SemisimpleElement> SemisimpleElement::primitive_decomposition() const {
  if (!is_idempotent()) throw ResidueNotIdempotent("primitive_decomposition: not an idempotent");
  std::vector<SemisimpleElement> out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (is_finite()) {
      for (auto& part : decompose_idempotent(blocks_[k].residue)) {
        SemisimpleElement s = zero(module_);
        s.blocks_[k].residue = std::move(part);
        out.push_back(std::move(s));
      }
    } else {
      const PatternMatrix& pm = blocks_[k].pattern;
      if (!pm.is_finitary()) throw BackendUnsupported("primitive_decomposition: infinite-rank residue");
      for (auto& part : decompose_idempotent(finitary_window(pm, finitary_extent(pm)))) {
        SemisimpleElement s = zero(module_);
        s.blocks_[k].pattern = window_to_pattern(part);
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::string SemisimpleElement::to_string() const {
  std::ostringstream os;
  for (const auto& b : blocks_) {
    os << b.iso_class.label() << ": ";
    if (is_finite()) {
      os << "[";
      for (std::size_t i = 0; i < b.residue.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < b.residue.cols(); ++j) os << (j ? ", " : "") << b.residue.at(i, j);
        os << "]";
      }
      os << "] ";
    } else {
      os << b.pattern.to_string() << " ";
    }
  }
  return os.str();
}

bool jacobson_membership(const EndoElement& h) {
  if (!h.is_finite()) {
    const PatternMatrix& p = h.pattern();
    for (const auto& [d, v] : p.steady()) {
      if (v.is_unit()) return false;
    }
    for (const auto& row : p.head_rows()) {
      for (const auto& [c, v] : row) {
        if (v.is_unit()) return false;
      }
    }
    return true;
  }
  const DecomposedModule& m = h.module();
  const std::size_t n = h.dimension();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      // A block between isomorphic summands is an isomorphism iff its scalar is a unit.
      if (m.same_class(j, i) && h.entry(j, i).is_unit()) return false;
    }
  }
  return true;
}

SemisimpleElement project_to_semisimple(const EndoElement& r) {
  SemisimpleElement s = SemisimpleElement::zero(r.module_ptr());
  const RingDescriptor field = RingDescriptor::residue_field(r.ring().prime);
  for (auto& b : s.blocks()) {
    if (!r.is_finite()) {
      b.pattern = r.pattern().map_entries(field, residue_scalar);
      continue;
    }
    for (std::size_t a = 0; a < b.members.size(); ++a) {
      for (std::size_t c = 0; c < b.members.size(); ++c) {
        b.residue.at(a, c) = r.entry(b.members[a], b.members[c]).residue();
      }
    }
  }
  return s;
}

EndoElement section_lift(const SemisimpleElement& s) {
  const ModulePtr& module = s.module_ptr();
  const RingDescriptor ring = module->ring();
  if (module->is_omega()) {
    const PatternMatrix& pm = s.blocks().front().pattern;
    return EndoElement::from_pattern(
        module, pm.map_entries(ring, [&](const AdicScalar& v) { return AdicScalar::from_int(ring, v.residue()); }));
  }
  const std::size_t n = module->size();
  std::vector<std::vector<AdicScalar>> entries(n, std::vector<AdicScalar>(n, AdicScalar::zero(ring)));
  for (const auto& b : s.blocks()) {
    for (std::size_t a = 0; a < b.members.size(); ++a) {
      for (std::size_t c = 0; c < b.members.size(); ++c) {
        entries[b.members[a]][b.members[c]] = AdicScalar::from_int(ring, b.residue.at(a, c));
      }
    }
  }
  return EndoElement::from_entries(module, entries);
}

}  // namespace semiperfect
