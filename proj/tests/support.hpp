#pragma once

// Shared test helpers: deterministic generators and oracles that do not
// reuse the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "semiperfect/adic.hpp"
#include "semiperfect/endo.hpp"
#include "semiperfect/module.hpp"
#include "semiperfect/semisimple.hpp"

namespace testing_support {

using namespace semiperfect;

inline constexpr std::uint64_t kSeed = 20241016;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  AdicScalar scalar(const RingDescriptor& ring) {
    if (ring.backend == Backend::kTruncated) {
      Poly c(ring.precision);
      for (auto& x : c) x = static_cast<Coeff>(uniform(0, ring.prime - 1));
      return AdicScalar::from_poly(ring, c);
    }
    Poly num(static_cast<std::size_t>(uniform(0, 3)));
    for (auto& x : num) x = static_cast<Coeff>(uniform(0, ring.prime - 1));
    Poly den{1};
    if (coin(0.3)) den = {1, static_cast<Coeff>(uniform(0, ring.prime - 1)), static_cast<Coeff>(uniform(0, ring.prime - 1))};
    return AdicScalar::fraction(ring, num, den);
  }

  AdicScalar unit(const RingDescriptor& ring) {
    for (;;) {
      AdicScalar x = scalar(ring);
      if (x.is_unit()) return x;
    }
  }

  ModulePtr module(const RingDescriptor& ring, std::size_t max_size = 3) {
    std::vector<LocalModule> s;
    const auto n = static_cast<std::size_t>(uniform(1, static_cast<long long>(max_size)));
    for (std::size_t i = 0; i < n; ++i) s.push_back(LocalModule::torsion(static_cast<unsigned>(uniform(1, ring.precision))));
    return std::make_shared<const DecomposedModule>(DecomposedModule::finite(ring, s));
  }

  EndoElement element(const ModulePtr& m) {
    if (m->is_omega()) return pattern_element(m);
    const std::size_t n = m->size();
    std::vector<std::vector<AdicScalar>> e(n, std::vector<AdicScalar>(n, AdicScalar::zero(m->ring())));
    for (auto& row : e) {
      for (auto& x : row) x = scalar(m->ring());
    }
    return EndoElement::from_entries(m, e);
  }

  EndoElement radical_element(const ModulePtr& m) {
    for (;;) {
      EndoElement x = element(m);
      if (jacobson_membership(x)) return x;
      // push same-class blocks into t * R
      if (!m->is_omega()) {
        const std::size_t n = m->size();
        std::vector<std::vector<AdicScalar>> e(n, std::vector<AdicScalar>(n, AdicScalar::zero(m->ring())));
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t i = 0; i < n; ++i) {
            e[j][i] = x.entry(j, i);
            if (m->same_class(j, i)) e[j][i] = e[j][i] - AdicScalar::from_int(m->ring(), e[j][i].residue());
          }
        }
        return EndoElement::from_entries(m, e);
      }
    }
  }

  EndoElement pattern_element(const ModulePtr& m) {
    const RingDescriptor ring = m->ring();
    std::vector<Band> bands;
    const auto nb = uniform(0, 2);
    for (long long b = 0; b < nb; ++b) {
      bands.push_back(Band{static_cast<long>(uniform(-1, 2)), scalar(ring), static_cast<std::size_t>(uniform(0, 3))});
    }
    std::vector<SparseEntry> sparse;
    const auto ns = uniform(0, 4);
    for (long long s = 0; s < ns; ++s) {
      sparse.push_back(SparseEntry{static_cast<std::size_t>(uniform(0, 4)), static_cast<std::size_t>(uniform(0, 5)),
                                   scalar(ring)});
    }
    return EndoElement::from_pattern(m, PatternMatrix(ring, bands, sparse));
  }

  SemisimpleElement semisimple(const ModulePtr& m) {
    SemisimpleElement s = SemisimpleElement::zero(m);
    for (auto& b : s.blocks()) {
      for (std::size_t r = 0; r < b.residue.rows(); ++r) {
        for (std::size_t c = 0; c < b.residue.cols(); ++c) b.residue.at(r, c) = static_cast<Coeff>(uniform(0, m->ring().prime - 1));
      }
    }
    return s;
  }

  ScalarMatrix matrix(const RingDescriptor& ring, std::size_t rows, std::size_t cols) {
    ScalarMatrix a(ring, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) a.at(r, c) = scalar(ring);
    }
    return a;
  }

  /// Product of random elementary matrices: invertible by construction.
  ScalarMatrix invertible(const RingDescriptor& ring, std::size_t n) {
    ScalarMatrix a = ScalarMatrix::identity(ring, n);
    for (int k = 0; k < 6; ++k) {
      const auto i = static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1));
      const auto j = static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1));
      if (i != j) a.add_row_multiple(i, j, scalar(ring));
      a.scale_row(i, unit(ring));
      if (coin()) a.swap_rows(i, j);
    }
    return a;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Naive truncated polynomial arithmetic.
namespace naive {

using Vec = std::vector<long long>;

inline Vec mul(const Vec& a, const Vec& b, long long p, std::size_t n) {
  Vec c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return c;
}

inline Vec coeffs(const AdicScalar& x) {
  Vec v(x.ring().precision);
  for (unsigned k = 0; k < x.ring().precision; ++k) v[k] = x.coefficient(k);
  return v;
}

}  // namespace naive

// ---------------------------------------------------------------------------
// M = (+) R/t^{a_i} as an F_p-vector space with basis t^k g_i; endomorphisms
// act on row vectors, so r s means "r, then s".
namespace model {

using Mat = std::vector<std::vector<int>>;

struct Space {
  int p;
  std::vector<unsigned> a;
  std::vector<std::size_t> offset;
  std::size_t dim = 0;

  Space(int prime, std::vector<unsigned> exps) : p(prime), a(std::move(exps)) {
    for (unsigned k : a) {
      offset.push_back(dim);
      dim += k;
    }
  }
  static Space of(const DecomposedModule& m) {
    std::vector<unsigned> e;
    for (const auto& s : m.summands()) e.push_back(s.exponent);
    return Space(static_cast<int>(m.ring().prime), e);
  }
};

inline Mat zero(std::size_t n) { return Mat(n, std::vector<int>(n, 0)); }

inline Mat mul(const Mat& x, const Mat& y, int p) {
  const std::size_t n = x.size();
  Mat z = zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) z[i][j] = (z[i][j] + x[i][k] * y[k][j]) % p;
    }
  }
  return z;
}

inline Mat add(const Mat& x, const Mat& y, int p) {
  Mat z = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) z[i][j] = (x[i][j] + y[i][j]) % p;
  }
  return z;
}

/// Multiplication by t.
inline Mat t_action(const Space& s) {
  Mat t = zero(s.dim);
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    for (unsigned k = 0; k + 1 < s.a[i]; ++k) t[s.offset[i] + k][s.offset[i] + k + 1] = 1;
  }
  return t;
}

/// Block (j, i) with scalar c sends g_j to c * t^max(0, a_i - a_j) g_i.
inline Mat of(const EndoElement& x, const Space& s) {
  Mat m = zero(s.dim);
  const std::size_t n = s.a.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const AdicScalar c = x.entry(j, i);
      const unsigned shift = s.a[i] > s.a[j] ? s.a[i] - s.a[j] : 0;
      for (unsigned k = 0; k < s.a[j]; ++k) {      // t^k g_j
        for (unsigned m2 = 0; m2 < x.ring().precision; ++m2) {
          const unsigned deg = k + shift + m2;
          if (deg >= s.a[i]) break;
          const int v = static_cast<int>(c.coefficient(m2));
          if (v == 0) continue;
          auto& cell = m[s.offset[j] + k][s.offset[i] + deg];
          cell = (cell + v) % s.p;
        }
      }
    }
  }
  return m;
}

/// Every F_p-linear map commuting with t (feasible for dim <= 4 at p = 2).
inline std::vector<Mat> enumerate_ring(const Space& s) {
  const Mat t = t_action(s);
  const std::size_t n = s.dim;
  std::vector<Mat> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) total *= static_cast<std::size_t>(s.p);
  for (std::size_t code = 0; code < total; ++code) {
    Mat m = zero(n);
    std::size_t c = code;
    for (std::size_t k = 0; k < n * n; ++k) {
      m[k / n][k % n] = static_cast<int>(c % static_cast<std::size_t>(s.p));
      c /= static_cast<std::size_t>(s.p);
    }
    if (mul(m, t, s.p) == mul(t, m, s.p)) out.push_back(std::move(m));
  }
  return out;
}

/// Finite ring on indices 0..n-1 with its tables.
struct FiniteRing {
  std::vector<Mat> elems;
  std::vector<std::vector<std::size_t>> add, mul;
  std::size_t zero = 0;

  FiniteRing(std::vector<Mat> e, int p) : elems(std::move(e)) {
    std::map<Mat, std::size_t> index;
    for (std::size_t k = 0; k < elems.size(); ++k) index[elems[k]] = k;
    const std::size_t n = elems.size();
    add.assign(n, std::vector<std::size_t>(n));
    mul.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        add[a][b] = index.at(model::add(elems[a], elems[b], p));
        mul[a][b] = index.at(model::mul(elems[a], elems[b], p));
      }
    }
    zero = index.at(model::zero(elems.front().size()));
  }
};

using Ideal = std::vector<bool>;

/// Smallest right ideal of `ring` inside `universe` containing `seed`, where
/// right multiplication uses the elements of `scalars`.
inline Ideal close_right(const FiniteRing& r, Ideal seed, const std::vector<std::size_t>& scalars) {
  const std::size_t n = r.elems.size();
  seed[r.zero] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < n; ++a) {
      if (seed[a]) members.push_back(a);
    }
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        const std::size_t c = r.add[a][b];
        if (!seed[c]) seed[c] = changed = true;
      }
      for (std::size_t s : scalars) {
        const std::size_t c = r.mul[a][s];
        if (!seed[c]) seed[c] = changed = true;
      }
    }
  }
  return seed;
}

/// Every right submodule of `universe` over the scalars `scalars`.
inline std::vector<Ideal> submodules(const FiniteRing& r, const std::vector<std::size_t>& universe,
                                     const std::vector<std::size_t>& scalars) {
  const std::size_t n = r.elems.size();
  std::set<Ideal> seen;
  std::vector<Ideal> queue{close_right(r, Ideal(n, false), scalars)};
  seen.insert(queue.front());
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t x : universe) {
      if (queue[q][x]) continue;
      Ideal next = queue[q];
      next[x] = true;
      next = close_right(r, next, scalars);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return queue;
}

/// Maximal proper submodules of `universe` over `scalars`.
inline std::vector<Ideal> maximal_submodules(const FiniteRing& r, const std::vector<std::size_t>& universe,
                                             const std::vector<std::size_t>& scalars) {
  auto ideals = submodules(r, universe, scalars);
  auto proper = [&](const Ideal& I) {
    return std::any_of(universe.begin(), universe.end(), [&](std::size_t x) { return !I[x]; });
  };
  auto contained = [&](const Ideal& I, const Ideal& J) {
    for (std::size_t k = 0; k < I.size(); ++k) {
      if (I[k] && !J[k]) return false;
    }
    return true;
  };
  std::vector<Ideal> out;
  for (const auto& I : ideals) {
    if (!proper(I)) continue;
    bool maximal = true;
    for (const auto& J : ideals) {
      if (J != I && proper(J) && contained(I, J)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(I);
  }
  return out;
}

/// Maximal proper right ideals of the subring `universe`.
inline std::vector<Ideal> maximal_right_ideals(const FiniteRing& r, const std::vector<std::size_t>& universe) {
  return maximal_submodules(r, universe, universe);
}

inline std::vector<std::size_t> all_indices(const FiniteRing& r) {
  std::vector<std::size_t> out(r.elems.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = k;
  return out;
}

/// Intersection of the maximal proper submodules (everything if there are none).
inline Ideal intersection(const std::vector<Ideal>& ideals, std::size_t n) {
  Ideal out(n, true);
  for (const auto& I : ideals) {
    for (std::size_t k = 0; k < n; ++k) out[k] = out[k] && I[k];
  }
  return out;
}

}  // namespace model

inline std::vector<std::vector<AdicScalar>> rows_of(const RingDescriptor& ring, std::vector<std::vector<const char*>> text) {
  std::vector<std::vector<AdicScalar>> out;
  for (const auto& row : text) {
    std::vector<AdicScalar> r;
    for (const char* s : row) r.push_back(AdicScalar::parse(ring, s));
    out.push_back(std::move(r));
  }
  return out;
}

inline ModulePtr torsion_module(const RingDescriptor& ring, std::vector<unsigned> exps) {
  std::vector<LocalModule> s;
  for (unsigned k : exps) s.push_back(LocalModule::torsion(k));
  return std::make_shared<const DecomposedModule>(DecomposedModule::finite(ring, s));
}

inline ModulePtr omega_module(Coeff p) {
  return std::make_shared<const DecomposedModule>(DecomposedModule::free_omega(RingDescriptor::pattern(p)));
}

inline EndoElement mat(const ModulePtr& m, std::vector<std::vector<const char*>> text) {
  return EndoElement::from_entries(m, rows_of(m->ring(), std::move(text)));
}

}  // namespace testing_support
