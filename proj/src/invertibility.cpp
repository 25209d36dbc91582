#include "semiperfect/invertibility.hpp"

#include <algorithm>
#include <set>

#include "semiperfect/errors.hpp"
#include "semiperfect/linearize.hpp"
#include "semiperfect/semisimple.hpp"

namespace semiperfect {

namespace {

constexpr std::size_t kNilpotencyProbe = 64;

InvertibilityDecision decide_truncated(const EndoElement& u) {
  const SemisimpleElement s = project_to_semisimple(u);
  auto s_inv = s.inverse();
  if (!s_inv) {
    NonInvertibilityCertificate cert;
    cert.reason = "residue matrix is singular";
    for (std::size_t k = 0; k < s.blocks().size(); ++k) {
      if (auto x = s.blocks()[k].residue.left_kernel_vector()) {
        cert.iso_class = k;
        cert.residue_kernel = *x;
        cert.reason += " in class " + s.blocks()[k].iso_class.label();
        break;
      }
    }
    return NotInvertible{std::move(cert)};
  }
  // u * v = 1 - n with n in the radical, which is nilpotent since t^N = 0.
  const EndoElement one = EndoElement::identity(u.module_ptr());
  const EndoElement v = section_lift(*s_inv);
  const EndoElement n = one - u * v;
  EndoElement sum = one;
  EndoElement power = n;
  const std::size_t bound = 2 * static_cast<std::size_t>(u.ring().precision) + 1;
  for (std::size_t k = 0; !power.is_zero(); ++k) {
    if (k > bound) throw NoConvergence("decide_invertible: Neumann series did not terminate");
    sum = sum + power;
    power = power * n;
  }
  EndoElement inverse = v * sum;
  if (!(u * inverse == one) || !(inverse * u == one)) {
    throw std::logic_error("decide_invertible: inverse failed verification");
  }
  return Invertible{std::move(inverse)};
}

// Unique solution of x * u = b_row on columns [0, width) for upper
// triangular u with unit diagonal.
std::vector<AdicScalar> forward_substitute(const PatternMatrix& u, std::size_t row, std::size_t width) {
  const RingDescriptor ring = u.ring();
  std::vector<AdicScalar> x(width, AdicScalar::zero(ring));
  for (std::size_t c = 0; c < width; ++c) {
    AdicScalar acc = c == row ? AdicScalar::one(ring) : AdicScalar::zero(ring);
    for (std::size_t j = 0; j < c; ++j) {
      if (!x[j].is_zero()) acc -= x[j] * u.entry(j, c);
    }
    x[c] = acc * u.entry(c, c).invert();
  }
  return x;
}

bool strictly_upper(const PatternMatrix& m) {
  for (const auto& [d, v] : m.steady()) {
    if (d < 1) return false;
  }
  for (std::size_t r = 0; r < m.head_rows().size(); ++r) {
    for (const auto& [c, v] : m.head_rows()[r]) {
      if (c <= r) return false;
    }
  }
  return true;
}

InvertibilityDecision decide_pattern(const EndoElement& u, std::size_t levels) {
  const PatternMatrix& body = u.pattern();
  const RingDescriptor ring = body.ring();
  const std::size_t t = body.threshold();

  auto steady_diag = body.steady().find(0);
  if (steady_diag == body.steady().end() || !steady_diag->second.is_unit()) {
    return Unknown{"diagonal is not eventually a unit"};
  }
  std::vector<Band> d_inv_bands{Band{0, steady_diag->second.invert(), t}};
  std::vector<SparseEntry> d_inv_sparse;
  for (std::size_t r = 0; r < t; ++r) {
    const AdicScalar d = body.entry(r, r);
    if (!d.is_unit()) return Unknown{"diagonal entry " + std::to_string(r) + " is not a unit"};
    d_inv_sparse.push_back(SparseEntry{r, r, d.invert()});
  }
  const PatternMatrix d_inv(ring, d_inv_bands, d_inv_sparse);
  const PatternMatrix identity = PatternMatrix::identity(ring);
  // u = D (1 - m)
  const PatternMatrix m = identity - d_inv * body;

  if (m.is_finitary()) {
    PatternMatrix sum = identity;
    PatternMatrix power = m;
    for (std::size_t k = 0; k < kNilpotencyProbe && !power.is_zero(); ++k) {
      sum = sum + power;
      power = power * m;
    }
    if (power.is_zero()) {
      PatternMatrix inverse = sum * d_inv;
      if (body * inverse == identity && inverse * body == identity) {
        return Invertible{EndoElement::from_pattern(u.module_ptr(), std::move(inverse))};
      }
    }
    return Unknown{"finitary off-diagonal part is not nilpotent"};
  }

  // A single steady band of positive offset leaves one support path from every
  // steady row, so no cancellation can occur.
  if (m.steady().size() == 1 && strictly_upper(m)) {
    const long d = m.steady().begin()->first;
    const std::size_t row = m.threshold();
    NonInvertibilityCertificate cert;
    cert.reason = "solution of x * u = b_" + std::to_string(row) + " has unbounded support";
    cert.row = row;
    cert.band_offset = d;
    for (std::size_t n = 1; n <= levels; ++n) {
      const std::size_t width = row + (n - 1) * static_cast<std::size_t>(d) + 1;
      auto x = forward_substitute(body, row, width);
      const auto support = static_cast<std::size_t>(
          std::count_if(x.begin(), x.end(), [](const AdicScalar& v) { return !v.is_zero(); }));
      cert.support_sizes.push_back(support);
      if (n == levels) cert.solution = std::move(x);
    }
    return NotInvertible{std::move(cert)};
  }
  return Unknown{"several support paths; cancellation cannot be excluded"};
}

}  // namespace

InvertibilityDecision decide_invertible(const EndoElement& u, std::size_t certificate_levels) {
  if (u.is_finite()) return decide_truncated(u);
  return decide_pattern(u, certificate_levels);
}

bool verify_support_growth(const EndoElement& u, const NonInvertibilityCertificate& certificate) {
  if (u.is_finite() || !certificate.row || certificate.band_offset < 1) return false;
  const PatternMatrix& body = u.pattern();
  for (std::size_t n = 1; n <= certificate.support_sizes.size(); ++n) {
    const std::size_t width = *certificate.row + (n - 1) * static_cast<std::size_t>(certificate.band_offset) + 1;
    for (std::size_t c = 0; c < width; ++c) {
      if (!body.entry(c, c).is_unit()) return false;
      for (std::size_t j = c + 1; j < width; ++j) {
        // lower triangle must vanish for forward substitution to be forced
        if (!body.entry(j, c).is_zero()) return false;
      }
    }
    auto x = forward_substitute(body, *certificate.row, width);
    const auto support = static_cast<std::size_t>(
        std::count_if(x.begin(), x.end(), [](const AdicScalar& v) { return !v.is_zero(); }));
    if (support != certificate.support_sizes[n - 1] || support < n) return false;
    // x * u must agree with b_row on every column of the window
    for (std::size_t c = 0; c < width; ++c) {
      AdicScalar acc = AdicScalar::zero(body.ring());
      for (std::size_t j = 0; j <= c; ++j) acc += x[j] * body.entry(j, c);
      const bool expect_one = c == *certificate.row;
      if (!(acc == (expect_one ? AdicScalar::one(body.ring()) : AdicScalar::zero(body.ring())))) return false;
    }
  }
  return true;
}

std::optional<EndoElement> is_locally_split_mono(const EndoElement& u, const OpenIdealDescriptor& ideal) {
  const ModulePtr& module = u.module_ptr();
  const EndoElement projector = summand_projector(module, ideal.generators);
  const EndoElement restricted = projector * u;
  const InvertibilityDecision decision = decide_invertible(u);
  if (const auto* inv = std::get_if<Invertible>(&decision)) return inv->inverse;

  std::optional<EndoElement> g;
  if (u.is_finite()) {
    const EndoBasis basis(module);
    g = solve_linear(basis, restricted, projector, Side::kRight);
  } else {
    const RingDescriptor ring = module->ring();
    const auto& rows = ideal.generators;
    std::set<std::size_t> col_set;
    for (std::size_t j : rows) {
      for (const auto& [c, v] : u.pattern().row(j)) col_set.insert(c);
    }
    const std::vector<std::size_t> cols(col_set.begin(), col_set.end());
    ScalarMatrix work(ring, rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = 0; b < cols.size(); ++b) work.at(a, b) = u.pattern().entry(rows[a], cols[b]);
    }
    const ScalarMatrix original = work;
    // A right inverse exists iff the residue matrix has full row rank; pick
    // pivot columns with unit entries row by row.
    std::vector<std::size_t> pivots;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      std::size_t piv = cols.size();
      for (std::size_t b = 0; b < cols.size(); ++b) {
        if (std::find(pivots.begin(), pivots.end(), b) == pivots.end() && work.at(a, b).is_unit()) {
          piv = b;
          break;
        }
      }
      if (piv == cols.size()) return std::nullopt;
      pivots.push_back(piv);
      const AdicScalar s = work.at(a, piv).invert();
      for (std::size_t r = a + 1; r < rows.size(); ++r) {
        if (!work.at(r, piv).is_zero()) work.add_row_multiple(r, a, -(work.at(r, piv) * s));
      }
    }
    ScalarMatrix minor(ring, rows.size(), rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t k = 0; k < pivots.size(); ++k) minor.at(a, k) = original.at(a, pivots[k]);
    }
    auto minor_inv = invert_over_local_ring(minor);
    if (!minor_inv) return std::nullopt;
    std::vector<SparseEntry> entries;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      for (std::size_t l = 0; l < rows.size(); ++l) {
        const AdicScalar& v = minor_inv->at(k, l);
        if (!v.is_zero()) entries.push_back(SparseEntry{cols[pivots[k]], rows[l], v});
      }
    }
    g = EndoElement::from_pattern(module, PatternMatrix::sparse(ring, entries));
  }
  if (!g || !(restricted * *g == projector)) return std::nullopt;
  return g;
}

}  // namespace semiperfect
