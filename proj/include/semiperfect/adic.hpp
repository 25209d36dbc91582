#pragma once

// Exact arithmetic in the two local base rings:
//
//   Truncated:  R_N = F_p[t]/(t^N), stored as a coefficient vector of length N.
//   Pattern:    A   = F_p[t]_(t), stored as a reduced fraction num/den with
//               monic den and den(0) != 0.
//
// Both are local rings with maximal ideal (t) and residue field F_p.

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semiperfect {

enum class Backend { kTruncated, kPattern };

using Coeff = std::uint32_t;
using Poly = std::vector<Coeff>;  // ascending powers of t

inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

struct RingDescriptor {
  Backend backend = Backend::kTruncated;
  Coeff prime = 2;
  unsigned precision = 1;  // N; zero for the pattern backend

  static RingDescriptor truncated(Coeff p, unsigned n);
  static RingDescriptor pattern(Coeff p);
  /// The residue field F_p, realized as the truncated ring with N = 1.
  static RingDescriptor residue_field(Coeff p) { return truncated(p, 1); }

  bool is_truncated() const { return backend == Backend::kTruncated; }
  bool is_pattern() const { return backend == Backend::kPattern; }
  std::string to_string() const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

bool is_prime(Coeff p);

/// Element of R_N or of A. Immutable value type; all operations are pure.
class AdicScalar {
 public:
  /// Zero of the residue field F_2 (placeholder for containers).
  AdicScalar();

  static AdicScalar zero(const RingDescriptor& ring);
  static AdicScalar one(const RingDescriptor& ring);
  static AdicScalar from_int(const RingDescriptor& ring, long long value);
  /// c * t^k.
  static AdicScalar monomial(const RingDescriptor& ring, long long c, unsigned k);
  static AdicScalar from_poly(const RingDescriptor& ring, Poly coeffs);
  /// num/den; den must be a unit (den(0) != 0).
  static AdicScalar fraction(const RingDescriptor& ring, Poly num, Poly den);
  /// Parses "1 + t + 2*t^3" or "(<poly>)/(<poly>)". Throws ParseError.
  static AdicScalar parse(const RingDescriptor& ring, std::string_view text);

  const RingDescriptor& ring() const { return ring_; }
  /// Coefficient vector (truncated: length N; pattern: numerator).
  const Poly& numerator() const { return num_; }
  /// Pattern denominator; {1} in the truncated backend.
  const Poly& denominator() const { return den_; }
  Coeff coefficient(unsigned k) const;  // truncated only

  bool is_zero() const;
  bool is_one() const;
  /// Order of t; kInfiniteValuation for zero (truncated: also for anything >= N).
  unsigned valuation() const;
  Coeff residue() const;
  bool is_unit() const { return residue() != 0; }
  /// Exact inverse; throws NonUnit when valuation >= 1.
  AdicScalar invert() const;

  /// Reduction modulo t^k (truncated backend, k <= N).
  AdicScalar reduce_mod_t_power(unsigned k) const;
  /// Exact quotient by t^k for an element of valuation >= k (truncated).
  AdicScalar divide_by_t_power(unsigned k) const;
  AdicScalar times_t_power(unsigned k) const;
  /// Image in R_M for M <= N (truncated source) or the power-series
  /// expansion modulo t^M (pattern source).
  AdicScalar to_precision(unsigned m) const;
  AdicScalar pow(unsigned k) const;

  AdicScalar operator-() const;
  AdicScalar& operator+=(const AdicScalar& other);
  AdicScalar& operator-=(const AdicScalar& other);
  AdicScalar& operator*=(const AdicScalar& other);
  friend AdicScalar operator+(AdicScalar a, const AdicScalar& b) { return a += b; }
  friend AdicScalar operator-(AdicScalar a, const AdicScalar& b) { return a -= b; }
  friend AdicScalar operator*(AdicScalar a, const AdicScalar& b) { return a *= b; }
  friend bool operator==(const AdicScalar& a, const AdicScalar& b);

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const AdicScalar& x) {
    return os << x.to_string();
  }

 private:
  AdicScalar(RingDescriptor ring, Poly num, Poly den);
  void check_same_ring(const AdicScalar& other) const;
  void normalize();

  RingDescriptor ring_;
  Poly num_;
  Poly den_;
};

namespace fp {

Coeff add(Coeff a, Coeff b, Coeff p);
Coeff sub(Coeff a, Coeff b, Coeff p);
Coeff mul(Coeff a, Coeff b, Coeff p);
Coeff inv(Coeff a, Coeff p);
Coeff from_int(long long v, Coeff p);

}  // namespace fp

namespace poly {

void trim(Poly& a);
Poly add(const Poly& a, const Poly& b, Coeff p);
Poly sub(const Poly& a, const Poly& b, Coeff p);
Poly mul(const Poly& a, const Poly& b, Coeff p);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, Coeff p);
Poly gcd(Poly a, Poly b, Coeff p);
std::string format(const Poly& a);

}  // namespace poly

}  // namespace semiperfect
