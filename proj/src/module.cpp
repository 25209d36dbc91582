#include "semiperfect/module.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "semiperfect/errors.hpp"

namespace semiperfect {

std::string LocalModule::label() const {
  if (is_free()) return "Free";
  return "Torsion(" + std::to_string(exponent) + ")";
}

DecomposedModule DecomposedModule::finite(const RingDescriptor& ring, std::vector<LocalModule> summands) {
  if (!ring.is_truncated()) {
    throw BackendUnsupported("finite decomposed modules live over the truncated backend");
  }
  for (const auto& s : summands) {
    if (s.is_free()) throw ValidationError("free summands require the pattern backend");
    if (s.exponent < 1 || s.exponent > ring.precision) {
      throw ValidationError("torsion exponent " + std::to_string(s.exponent) + " outside [1, " +
                            std::to_string(ring.precision) + "]");
    }
  }
  DecomposedModule m;
  m.ring_ = ring;
  m.summands_ = std::move(summands);
  return m;
}

DecomposedModule DecomposedModule::free_omega(const RingDescriptor& ring) {
  if (!ring.is_pattern()) throw BackendUnsupported("free^omega requires the pattern backend");
  DecomposedModule m;
  m.ring_ = ring;
  m.omega_ = true;
  return m;
}

std::size_t DecomposedModule::size() const {
  if (omega_) throw BackendUnsupported("size(): module has countably many summands");
  return summands_.size();
}

const LocalModule& DecomposedModule::summand(std::size_t i) const {
  if (omega_) return i < summands_.size() ? summands_[i] : tail_;
  return summands_.at(i);
}

std::vector<IsoClass> DecomposedModule::iso_classes() const {
  std::vector<IsoClass> classes;
  if (omega_) {
    classes.push_back({tail_, {}});
    return classes;
  }
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const IsoClass& c) { return c.key == summands_[i]; });
    if (it == classes.end()) {
      classes.push_back({summands_[i], {i}});
    } else {
      it->members.push_back(i);
    }
  }
  return classes;
}

std::size_t DecomposedModule::class_of(std::size_t i) const {
  if (omega_) return 0;
  const auto classes = iso_classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].key == summands_.at(i)) return c;
  }
  return 0;
}

std::string DecomposedModule::to_string() const {
  if (omega_) return "Free^omega over " + ring_.to_string();
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < summands_.size(); ++i) os << (i ? ", " : "") << summands_[i].label();
  os << "] over " << ring_.to_string();
  return os.str();
}

unsigned hom_block_shape(const LocalModule& src, const LocalModule& dst) {
  if (src.is_free() && dst.is_free()) return kFullRankHom;
  if (dst.is_free()) return 0;
  if (src.is_free()) return dst.exponent;
  return std::min(src.exponent, dst.exponent);
}

SmithResult smith_decompose(const ScalarMatrix& presentation) {
  const RingDescriptor& ring = presentation.ring();
  if (!ring.is_truncated()) throw BackendUnsupported("smith_decompose: truncated backend only");
  const std::size_t rows = presentation.rows();
  const std::size_t cols = presentation.cols();
  ScalarMatrix a = presentation;
  ScalarMatrix p = ScalarMatrix::identity(ring, rows);
  ScalarMatrix p_inv = ScalarMatrix::identity(ring, rows);
  ScalarMatrix q = ScalarMatrix::identity(ring, cols);
  ScalarMatrix q_inv = ScalarMatrix::identity(ring, cols);

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t s = 0; s < steps; ++s) {
    unsigned best = kInfiniteValuation;
    std::size_t pr = s, pc = s;
    for (std::size_t i = s; i < rows; ++i) {
      for (std::size_t j = s; j < cols; ++j) {
        const unsigned v = a.at(i, j).valuation();
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (best == kInfiniteValuation) break;

    a.swap_rows(s, pr);
    p.swap_rows(s, pr);
    p_inv.swap_cols(s, pr);
    a.swap_cols(s, pc);
    q.swap_cols(s, pc);
    q_inv.swap_rows(s, pc);

    const AdicScalar unit = a.at(s, s).divide_by_t_power(best);
    const AdicScalar unit_inv = unit.invert();
    a.scale_row(s, unit_inv);
    p.scale_row(s, unit_inv);
    for (std::size_t r = 0; r < rows; ++r) p_inv.at(r, s) *= unit;

    for (std::size_t i = s + 1; i < rows; ++i) {
      if (a.at(i, s).is_zero()) continue;
      const AdicScalar f = a.at(i, s).divide_by_t_power(best);
      a.add_row_multiple(i, s, -f);
      p.add_row_multiple(i, s, -f);
      p_inv.add_col_multiple(s, i, f);
    }
    for (std::size_t j = s + 1; j < cols; ++j) {
      if (a.at(s, j).is_zero()) continue;
      const AdicScalar f = a.at(s, j).divide_by_t_power(best);
      a.add_col_multiple(j, s, -f);
      q.add_col_multiple(j, s, -f);
      q_inv.add_row_multiple(s, j, f);
    }
  }

  const unsigned n = ring.precision;
  std::vector<std::pair<unsigned, std::size_t>> factors;
  for (std::size_t i = 0; i < rows; ++i) {
    unsigned k = n;
    if (i < steps) k = std::min(a.at(i, i).valuation(), n);
    if (k == 0) continue;
    factors.emplace_back(k, i);
  }
  std::stable_sort(factors.begin(), factors.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<LocalModule> summands;
  std::vector<std::size_t> summand_rows;
  for (const auto& [k, row] : factors) {
    summands.push_back(LocalModule::torsion(k));
    summand_rows.push_back(row);
  }
  return SmithResult{DecomposedModule::finite(ring, std::move(summands)), std::move(a), std::move(p),
                     std::move(p_inv), std::move(q), std::move(q_inv), std::move(summand_rows)};
}

}  // namespace semiperfect
