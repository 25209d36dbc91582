#include "semiperfect/adic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "semiperfect/errors.hpp"

namespace semiperfect {

bool is_prime(Coeff p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

RingDescriptor RingDescriptor::truncated(Coeff p, unsigned n) {
  if (!is_prime(p)) throw ValidationError("ring: p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw ValidationError("ring: precision N must be at least 1");
  return RingDescriptor{Backend::kTruncated, p, n};
}

RingDescriptor RingDescriptor::pattern(Coeff p) {
  if (!is_prime(p)) throw ValidationError("ring: p = " + std::to_string(p) + " is not prime");
  return RingDescriptor{Backend::kPattern, p, 0};
}

std::string RingDescriptor::to_string() const {
  std::ostringstream os;
  if (is_truncated()) {
    os << "F_" << prime << "[t]/(t^" << precision << ")";
  } else {
    os << "F_" << prime << "[t]_(t)";
  }
  return os.str();
}

namespace fp {

Coeff add(Coeff a, Coeff b, Coeff p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Coeff>(s >= p ? s - p : s);
}

Coeff sub(Coeff a, Coeff b, Coeff p) { return a >= b ? a - b : static_cast<Coeff>(std::uint64_t{a} + p - b); }

Coeff mul(Coeff a, Coeff b, Coeff p) { return static_cast<Coeff>(std::uint64_t{a} * b % p); }

Coeff inv(Coeff a, Coeff p) {
  if (a % p == 0) throw NonUnit("division by zero in F_" + std::to_string(p));
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<Coeff>(result);
}

Coeff from_int(long long v, Coeff p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<Coeff>(r);
}

}  // namespace fp

namespace poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(const Poly& a, const Poly& b, Coeff p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = fp::add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, Coeff p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = fp::sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, Coeff p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
    }
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, Coeff p) {
  Poly rem = a;
  trim(rem);
  Poly bb = b;
  trim(bb);
  if (bb.empty()) throw Error("polynomial division by zero");
  if (rem.size() < bb.size()) return {{}, rem};
  Poly quo(rem.size() - bb.size() + 1, 0);
  const Coeff lead_inv = fp::inv(bb.back(), p);
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Coeff c = fp::mul(rem[k + bb.size() - 1], lead_inv, p);
    quo[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      rem[k + j] = fp::sub(rem[k + j], fp::mul(c, bb[j], p), p);
    }
  }
  trim(quo);
  trim(rem);
  return {quo, rem};
}

Poly gcd(Poly a, Poly b, Coeff p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Coeff lead_inv = fp::inv(a.back(), p);
    for (auto& c : a) c = fp::mul(c, lead_inv, p);
  }
  return a;
}

std::string format(const Poly& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << a[k];
      continue;
    }
    if (a[k] != 1) os << a[k] << "*";
    os << "t";
    if (k > 1) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace poly

namespace {

// Recursive-descent parser for "<int>*t^<int> + ..." with signs.
class PolyParser {
 public:
  PolyParser(std::string_view text, Coeff p) : text_(text), p_(p) {}

  Poly parse_poly() {
    Poly result;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      auto [c, k] = parse_term();
      if (result.size() <= k) result.resize(k + 1, 0);
      result[k] = negative ? fp::sub(result[k], c, p_) : fp::add(result[k], c, p_);
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        continue;
      }
      break;
    }
    poly::trim(result);
    return result;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar \"" + std::string(text_) + "\": " + what + " at position " +
                     std::to_string(pos_));
  }

 private:
  std::pair<Coeff, unsigned> parse_term() {
    skip_ws();
    Coeff c = 1;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = fp::from_int(parse_int(), p_);
      have_number = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else {
        return {c, 0};
      }
    }
    if (peek() != 't') {
      if (have_number) fail("expected 't' after '*'");
      fail("expected a term");
    }
    ++pos_;
    skip_ws();
    unsigned k = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
      long long e = parse_int();
      if (e > 1'000'000) fail("exponent too large");
      k = static_cast<unsigned>(e);
    }
    return {c, k};
  }

  long long parse_int() {
    long long v = 0;
    std::size_t digits = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000'000LL) fail("integer too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail("expected integer");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Coeff p_;
};

}  // namespace

AdicScalar::AdicScalar() : AdicScalar(RingDescriptor{}, Poly(1, 0), Poly{1}) {}

AdicScalar::AdicScalar(RingDescriptor ring, Poly num, Poly den)
    : ring_(ring), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void AdicScalar::normalize() {
  const Coeff p = ring_.prime;
  if (ring_.is_truncated()) {
    for (auto& c : num_) c %= p;
    if (!(den_.size() == 1 && den_[0] == 1)) {
      // Truncated scalars are stored without denominators; fold a unit
      // denominator into the numerator by series inversion.
      Poly d = den_;
      poly::trim(d);
      if (d.empty() || d[0] % p == 0) throw NonUnit("denominator is not a unit in " + ring_.to_string());
      den_ = Poly{1};
      num_.resize(ring_.precision, 0);
      AdicScalar dn(ring_, d, Poly{1});
      *this = AdicScalar(ring_, num_, Poly{1}) * dn.invert();
      return;
    }
    num_.resize(ring_.precision, 0);
    return;
  }
  poly::trim(num_);
  poly::trim(den_);
  if (den_.empty() || den_[0] % p == 0) {
    throw NonUnit("denominator vanishes at t = 0 in " + ring_.to_string());
  }
  if (num_.empty()) {
    den_ = Poly{1};
    return;
  }
  Poly g = poly::gcd(num_, den_, p);
  if (g.size() > 1) {
    num_ = poly::divmod(num_, g, p).first;
    den_ = poly::divmod(den_, g, p).first;
  }
  const Coeff lead_inv = fp::inv(den_.back(), p);
  for (auto& c : num_) c = fp::mul(c, lead_inv, p);
  for (auto& c : den_) c = fp::mul(c, lead_inv, p);
}

AdicScalar AdicScalar::zero(const RingDescriptor& ring) { return AdicScalar(ring, {}, Poly{1}); }

AdicScalar AdicScalar::one(const RingDescriptor& ring) { return AdicScalar(ring, Poly{1}, Poly{1}); }

AdicScalar AdicScalar::from_int(const RingDescriptor& ring, long long value) {
  return AdicScalar(ring, Poly{fp::from_int(value, ring.prime)}, Poly{1});
}

AdicScalar AdicScalar::monomial(const RingDescriptor& ring, long long c, unsigned k) {
  if (ring.is_truncated() && k >= ring.precision) return zero(ring);
  Poly v(k + 1, 0);
  v[k] = fp::from_int(c, ring.prime);
  return AdicScalar(ring, std::move(v), Poly{1});
}

AdicScalar AdicScalar::from_poly(const RingDescriptor& ring, Poly coeffs) {
  for (auto& c : coeffs) c %= ring.prime;
  if (ring.is_truncated() && coeffs.size() > ring.precision) coeffs.resize(ring.precision);
  return AdicScalar(ring, std::move(coeffs), Poly{1});
}

AdicScalar AdicScalar::fraction(const RingDescriptor& ring, Poly num, Poly den) {
  for (auto& c : num) c %= ring.prime;
  for (auto& c : den) c %= ring.prime;
  if (ring.is_truncated() && num.size() > ring.precision) num.resize(ring.precision);
  return AdicScalar(ring, std::move(num), std::move(den));
}

AdicScalar AdicScalar::parse(const RingDescriptor& ring, std::string_view text) {
  PolyParser parser(text, ring.prime);
  parser.skip_ws();
  if (parser.peek() == '(') {
    parser.expect('(');
    Poly num = parser.parse_poly();
    parser.expect(')');
    parser.skip_ws();
    if (parser.at_end()) return from_poly(ring, std::move(num));
    parser.expect('/');
    parser.expect('(');
    Poly den = parser.parse_poly();
    parser.expect(')');
    if (!parser.at_end()) parser.fail("trailing characters");
    if (den.empty() || den[0] == 0) parser.fail("denominator is not a unit");
    return fraction(ring, std::move(num), std::move(den));
  }
  Poly num = parser.parse_poly();
  if (!parser.at_end()) parser.fail("trailing characters");
  return from_poly(ring, std::move(num));
}

void AdicScalar::check_same_ring(const AdicScalar& other) const {
  if (!(ring_ == other.ring_)) {
    throw Error("ring mismatch: " + ring_.to_string() + " vs " + other.ring_.to_string());
  }
}

Coeff AdicScalar::coefficient(unsigned k) const { return k < num_.size() ? num_[k] : 0; }

bool AdicScalar::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](Coeff c) { return c == 0; });
}

bool AdicScalar::is_one() const { return *this == one(ring_); }

unsigned AdicScalar::valuation() const {
  for (std::size_t k = 0; k < num_.size(); ++k) {
    if (num_[k] != 0) return static_cast<unsigned>(k);
  }
  return kInfiniteValuation;
}

Coeff AdicScalar::residue() const {
  const Coeff n0 = num_.empty() ? 0 : num_[0];
  if (ring_.is_truncated()) return n0;
  return fp::mul(n0, fp::inv(den_[0], ring_.prime), ring_.prime);
}

AdicScalar AdicScalar::invert() const {
  if (!is_unit()) throw NonUnit("element " + to_string() + " is not a unit of " + ring_.to_string());
  const Coeff p = ring_.prime;
  if (ring_.is_pattern()) return AdicScalar(ring_, den_, num_);
  // Power-series inversion: y_0 = a_0^{-1}, y_k = -a_0^{-1} sum_{i>=1} a_i y_{k-i}.
  const unsigned n = ring_.precision;
  Poly y(n, 0);
  const Coeff a0_inv = fp::inv(num_[0], p);
  y[0] = a0_inv;
  for (unsigned k = 1; k < n; ++k) {
    Coeff s = 0;
    for (unsigned i = 1; i <= k; ++i) s = fp::add(s, fp::mul(coefficient(i), y[k - i], p), p);
    y[k] = fp::mul(fp::sub(0, s, p), a0_inv, p);
  }
  return AdicScalar(ring_, std::move(y), Poly{1});
}

AdicScalar AdicScalar::reduce_mod_t_power(unsigned k) const {
  if (!ring_.is_truncated()) throw BackendUnsupported("reduce_mod_t_power: truncated backend only");
  Poly v = num_;
  for (std::size_t i = k; i < v.size(); ++i) v[i] = 0;
  return AdicScalar(ring_, std::move(v), Poly{1});
}

AdicScalar AdicScalar::divide_by_t_power(unsigned k) const {
  if (k == 0) return *this;
  if (valuation() < k) throw NonUnit("divide_by_t_power: valuation too small");
  if (ring_.is_truncated()) {
    Poly v(ring_.precision, 0);
    for (std::size_t i = k; i < num_.size(); ++i) v[i - k] = num_[i];
    return AdicScalar(ring_, std::move(v), Poly{1});
  }
  Poly v(num_.begin() + k, num_.end());
  return AdicScalar(ring_, std::move(v), den_);
}

AdicScalar AdicScalar::times_t_power(unsigned k) const {
  if (k == 0) return *this;
  Poly v(k, 0);
  v.insert(v.end(), num_.begin(), num_.end());
  if (ring_.is_truncated()) v.resize(ring_.precision, 0);
  return AdicScalar(ring_, std::move(v), den_);
}

AdicScalar AdicScalar::to_precision(unsigned m) const {
  RingDescriptor target = RingDescriptor::truncated(ring_.prime, m);
  if (ring_.is_truncated()) {
    if (m > ring_.precision) throw ValidationError("to_precision: cannot raise precision");
    Poly v(num_.begin(), num_.begin() + m);
    return AdicScalar(target, std::move(v), Poly{1});
  }
  return fraction(target, num_, den_);
}

AdicScalar AdicScalar::pow(unsigned k) const {
  AdicScalar result = one(ring_);
  AdicScalar base = *this;
  for (; k > 0; k >>= 1) {
    if (k & 1) result *= base;
    base *= base;
  }
  return result;
}

AdicScalar AdicScalar::operator-() const {
  Poly v = num_;
  for (auto& c : v) c = fp::sub(0, c, ring_.prime);
  return AdicScalar(ring_, std::move(v), den_);
}

AdicScalar& AdicScalar::operator+=(const AdicScalar& other) {
  check_same_ring(other);
  const Coeff p = ring_.prime;
  if (ring_.is_truncated()) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = fp::add(num_[i], other.num_[i], p);
    return *this;
  }
  if (den_ == other.den_) {
    *this = AdicScalar(ring_, poly::add(num_, other.num_, p), den_);
  } else {
    *this = AdicScalar(ring_,
                       poly::add(poly::mul(num_, other.den_, p), poly::mul(other.num_, den_, p), p),
                       poly::mul(den_, other.den_, p));
  }
  return *this;
}

AdicScalar& AdicScalar::operator-=(const AdicScalar& other) { return *this += -other; }

AdicScalar& AdicScalar::operator*=(const AdicScalar& other) {
  check_same_ring(other);
  const Coeff p = ring_.prime;
  if (ring_.is_truncated()) {
    const unsigned n = ring_.precision;
    Poly r(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      if (num_[i] == 0) continue;
      for (unsigned j = 0; i + j < n; ++j) {
        r[i + j] = fp::add(r[i + j], fp::mul(num_[i], other.num_[j], p), p);
      }
    }
    num_ = std::move(r);
    return *this;
  }
  *this = AdicScalar(ring_, poly::mul(num_, other.num_, p), poly::mul(den_, other.den_, p));
  return *this;
}

bool operator==(const AdicScalar& a, const AdicScalar& b) {
  return a.ring_ == b.ring_ && a.num_ == b.num_ && a.den_ == b.den_;
}

std::string AdicScalar::to_string() const {
  if (ring_.is_truncated() || den_ == Poly{1}) {
    Poly v = num_;
    poly::trim(v);
    return poly::format(v);
  }
  return "(" + poly::format(num_) + ")/(" + poly::format(den_) + ")";
}

}  // namespace semiperfect
