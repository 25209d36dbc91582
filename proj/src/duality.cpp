#include "semiperfect/duality.hpp"

#include <algorithm>
#include <sstream>

#include "semiperfect/errors.hpp"
#include "semiperfect/linearize.hpp"

namespace semiperfect {

FormalFamily FormalFamily::finite(const RingDescriptor& ring, std::vector<AdicScalar> entries) {
  FormalFamily f;
  f.ring_ = ring;
  f.prefix_ = std::move(entries);
  return f;
}

FormalFamily FormalFamily::omega(const RingDescriptor& ring, std::vector<AdicScalar> prefix,
                                 std::optional<GeometricTail> tail) {
  FormalFamily f;
  f.ring_ = ring;
  f.omega_ = true;
  f.prefix_ = std::move(prefix);
  if (tail && !tail->first.is_zero()) f.tail_ = std::move(tail);
  return f;
}

FormalFamily FormalFamily::point_mass(const RingDescriptor& ring, std::size_t size, std::size_t at) {
  std::vector<AdicScalar> e(size, AdicScalar::zero(ring));
  e.at(at) = AdicScalar::one(ring);
  return finite(ring, std::move(e));
}

AdicScalar FormalFamily::coefficient(std::size_t k) const {
  if (tail_ && k >= tail_->from) {
    return tail_->first.times_t_power(static_cast<unsigned>(tail_->ratio_power * (k - tail_->from)));
  }
  return k < prefix_.size() ? prefix_[k] : AdicScalar::zero(ring_);
}

bool FormalFamily::is_zero_convergent() const {
  return !tail_ || tail_->ratio_power > 0;
}

bool operator==(const FormalFamily& a, const FormalFamily& b) {
  if (!(a.ring_ == b.ring_) || a.omega_ != b.omega_ || a.prefix_ != b.prefix_) return false;
  if (a.tail_.has_value() != b.tail_.has_value()) return false;
  if (!a.tail_) return true;
  return a.tail_->from == b.tail_->from && a.tail_->first == b.tail_->first &&
         a.tail_->ratio_power == b.tail_->ratio_power;
}

std::string FormalFamily::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < prefix_.size(); ++k) os << (k ? ", " : "") << prefix_[k];
  if (tail_) {
    os << (prefix_.empty() ? "" : ", ") << "k >= " << tail_->from << ": (" << tail_->first << ")*t^("
       << tail_->ratio_power << "*(k - " << tail_->from << "))";
  } else if (omega_) {
    os << (prefix_.empty() ? "" : ", ") << "0, ...";
  }
  os << ")";
  return os.str();
}

AdicScalar Column::at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  return tail ? *tail : AdicScalar::zero(ring);
}

bool operator==(const Column& a, const Column& b) {
  return a.ring == b.ring && a.prefix == b.prefix && a.tail == b.tail;
}

AdicScalar eval_contraaction(const FormalFamily& coeffs, const Column& values) {
  const RingDescriptor ring = coeffs.ring();
  AdicScalar sum = AdicScalar::zero(ring);
  if (!coeffs.is_omega()) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) sum += coeffs.prefix()[k] * values.at(k);
    return sum;
  }
  const auto& tail = coeffs.tail();
  const std::size_t explicit_end =
      tail ? std::max(tail->from, values.prefix.size()) : coeffs.prefix().size();
  for (std::size_t k = 0; k < explicit_end; ++k) {
    const AdicScalar c = coeffs.coefficient(k);
    if (!c.is_zero()) sum += c * values.at(k);
  }
  if (!tail) return sum;
  // From explicit_end on, the values are constant and the coefficients geometric.
  const AdicScalar v = values.at(explicit_end);
  const AdicScalar g = coeffs.coefficient(explicit_end);
  if (v.is_zero() || g.is_zero()) return sum;
  if (tail->ratio_power == 0) throw NotSummable("eval_contraaction: geometric tail with unit ratio");
  if (ring.backend == Backend::kPattern) {
    const AdicScalar denom = AdicScalar::one(ring) - AdicScalar::monomial(ring, 1, tail->ratio_power);
    return sum + g * v * denom.invert();
  }
  for (unsigned j = 0; j * tail->ratio_power < ring.precision; ++j) {
    sum += g.times_t_power(j * tail->ratio_power) * v;
  }
  return sum;
}

std::vector<AdicScalar> eval_contraaction(const FormalFamily& coeffs, const std::vector<Column>& components) {
  std::vector<AdicScalar> out;
  for (const auto& c : components) out.push_back(eval_contraaction(coeffs, c));
  return out;
}

const char* to_string(Orientation o) {
  return o == Orientation::kContra ? "contra" : "product";
}

DualityMatrix::DualityMatrix(Body body, Orientation orientation, std::string rows, std::string cols)
    : body_(std::move(body)), orientation_(orientation), rows_(std::move(rows)), cols_(std::move(cols)) {}

bool DualityMatrix::is_dense() const {
  return std::holds_alternative<ScalarMatrix>(body_) || std::holds_alternative<EndoGrid>(body_);
}

std::optional<std::size_t> DualityMatrix::row_count() const {
  if (const auto* m = std::get_if<ScalarMatrix>(&body_)) return m->rows();
  if (const auto* g = std::get_if<EndoGrid>(&body_)) return g->size();
  if (const auto* r = std::get_if<RowList>(&body_)) return r->size();
  return std::nullopt;
}

std::optional<std::size_t> DualityMatrix::col_count() const {
  if (const auto* m = std::get_if<ScalarMatrix>(&body_)) return m->cols();
  if (const auto* g = std::get_if<EndoGrid>(&body_)) return g->empty() ? 0 : g->front().size();
  if (const auto* r = std::get_if<RowList>(&body_)) {
    if (r->empty()) return 0;
    if (r->front().is_omega()) return std::nullopt;
    return r->front().size();
  }
  return std::nullopt;
}

bool operator==(const DualityMatrix& a, const DualityMatrix& b) {
  return a.orientation_ == b.orientation_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.body_ == b.body_;
}

bool check_row_zero_convergent(const DualityMatrix& m) {
  if (const auto* rows = std::get_if<DualityMatrix::RowList>(&m.body())) {
    return std::all_of(rows->begin(), rows->end(), [](const FormalFamily& f) { return f.is_zero_convergent(); });
  }
  return true;  // finite matrices and row-finite patterns
}

DualityMatrix dual_matrix(const DualityMatrix& m) {
  if (!check_row_zero_convergent(m)) throw NotRowConvergent("dual_matrix: a row is not zero-convergent");
  const Orientation flipped = m.orientation() == Orientation::kContra ? Orientation::kProduct : Orientation::kContra;
  return DualityMatrix(m.body(), flipped, m.row_label(), m.col_label());
}

DualityMatrix dual_matrix(const DualityMatrix& m, DualDirection direction) {
  const Orientation expected =
      direction == DualDirection::kContraToProd ? Orientation::kContra : Orientation::kProduct;
  if (m.orientation() != expected) throw ValidationError("dual_matrix: matrix is on the other side already");
  return dual_matrix(m);
}

namespace {

using EndoGrid = DualityMatrix::EndoGrid;
using RowList = DualityMatrix::RowList;

EndoGrid grid_product(const EndoGrid& a, const EndoGrid& b) {
  if (a.empty() || b.empty()) return {};
  if (a.front().size() != b.size()) throw ValidationError("duality: shape mismatch in product");
  const EndoElement zero = EndoElement::zero(a.front().front().module_ptr());
  EndoGrid out(a.size(), std::vector<EndoElement>(b.front().size(), zero));
  for (std::size_t y = 0; y < a.size(); ++y) {
    for (std::size_t z = 0; z < b.front().size(); ++z) {
      for (std::size_t x = 0; x < b.size(); ++x) out[y][z] = out[y][z] + a[y][x] * b[x][z];
    }
  }
  return out;
}

// Row f (over omega) times the row-finite matrix b.
FormalFamily row_times_pattern(const FormalFamily& f, const PatternMatrix& b) {
  const RingDescriptor ring = f.ring();
  const std::size_t t = b.threshold();
  auto column = [&](std::size_t c) {
    AdicScalar acc = AdicScalar::zero(ring);
    for (std::size_t x = 0; x < t; ++x) {
      const AdicScalar fx = f.coefficient(x);
      if (!fx.is_zero()) acc += fx * b.entry(x, c);
    }
    for (const auto& [d, v] : b.steady()) {
      const long x = static_cast<long>(c) - d;
      if (x >= static_cast<long>(t)) acc += f.coefficient(static_cast<std::size_t>(x)) * v;
    }
    return acc;
  };
  const long reach = std::max(0L, b.steady().empty() ? 0L : b.max_offset());
  std::size_t support_end = std::max(f.prefix().size(), t);
  if (f.tail()) support_end = std::max(support_end, f.tail()->from);
  // Past this column every contribution comes from steady rows inside the tail.
  std::size_t tail_from = support_end + static_cast<std::size_t>(reach) +
                          static_cast<std::size_t>(std::max(0L, b.steady().empty() ? 0L : -b.min_offset()));
  // Head rows may reach far to the right.
  for (std::size_t x = 0; x < t; ++x) {
    for (const auto& [c, v] : b.row(x)) tail_from = std::max(tail_from, c + 1);
  }
  std::size_t explicit_end = tail_from;
  if (!f.tail()) {
    // Finitely supported row: the product is supported below the last reachable column.
    explicit_end = 0;
    for (std::size_t x = 0; x < support_end; ++x) {
      if (f.coefficient(x).is_zero()) continue;
      for (const auto& [c, v] : b.row(x)) explicit_end = std::max(explicit_end, c + 1);
    }
  }
  std::vector<AdicScalar> prefix;
  for (std::size_t c = 0; c < explicit_end; ++c) prefix.push_back(column(c));
  if (!f.tail()) return FormalFamily::omega(ring, std::move(prefix));
  return FormalFamily::omega(ring, std::move(prefix), GeometricTail{tail_from, column(tail_from), f.tail()->ratio_power});
}

DualityMatrix::Body product(const DualityMatrix::Body& a, const DualityMatrix::Body& b) {
  if (const auto* ma = std::get_if<ScalarMatrix>(&a)) {
    if (const auto* mb = std::get_if<ScalarMatrix>(&b)) {
      if (ma->cols() != mb->rows()) throw ValidationError("duality: shape mismatch in product");
      return *ma * *mb;
    }
  }
  if (const auto* ga = std::get_if<EndoGrid>(&a)) {
    if (const auto* gb = std::get_if<EndoGrid>(&b)) return grid_product(*ga, *gb);
  }
  if (const auto* pa = std::get_if<PatternMatrix>(&a)) {
    if (const auto* pb = std::get_if<PatternMatrix>(&b)) return *pa * *pb;
  }
  if (const auto* ra = std::get_if<RowList>(&a)) {
    if (const auto* pb = std::get_if<PatternMatrix>(&b)) {
      RowList out;
      for (const auto& f : *ra) out.push_back(row_times_pattern(f, *pb));
      return out;
    }
    if (const auto* mb = std::get_if<ScalarMatrix>(&b)) {
      RowList out;
      for (const auto& f : *ra) {
        if (f.is_omega() || f.size() != mb->rows()) throw ValidationError("duality: shape mismatch in product");
        std::vector<AdicScalar> row(mb->cols(), AdicScalar::zero(mb->ring()));
        for (std::size_t x = 0; x < f.size(); ++x) {
          for (std::size_t z = 0; z < mb->cols(); ++z) row[z] += f.prefix()[x] * mb->at(x, z);
        }
        out.push_back(FormalFamily::finite(mb->ring(), std::move(row)));
      }
      return out;
    }
  }
  throw BackendUnsupported("duality: product of these matrix shapes is not supported");
}

}  // namespace

DualityMatrix compose_contra(const DualityMatrix& f, const DualityMatrix& g) {
  if (f.orientation() != Orientation::kContra || g.orientation() != Orientation::kContra) {
    throw ValidationError("compose_contra: both maps must be contramodule morphisms");
  }
  return DualityMatrix(product(f.body(), g.body()), Orientation::kContra, f.row_label(), g.col_label());
}

DualityMatrix compose_prod(const DualityMatrix& f, const DualityMatrix& g) {
  if (f.orientation() != Orientation::kProduct || g.orientation() != Orientation::kProduct) {
    throw ValidationError("compose_prod: both maps must be product-module maps");
  }
  return DualityMatrix(product(g.body(), f.body()), Orientation::kProduct, g.row_label(), f.col_label());
}

Column apply_product_map(const DualityMatrix& m, const Column& v) {
  if (const auto* a = std::get_if<ScalarMatrix>(&m.body())) {
    Column out{a->ring(), std::vector<AdicScalar>(a->rows(), AdicScalar::zero(a->ring())), std::nullopt};
    for (std::size_t y = 0; y < a->rows(); ++y) {
      for (std::size_t x = 0; x < a->cols(); ++x) out.prefix[y] += a->at(y, x) * v.at(x);
    }
    return out;
  }
  if (const auto* b = std::get_if<PatternMatrix>(&m.body())) {
    const RingDescriptor ring = b->ring();
    auto row_sum = [&](std::size_t r) {
      AdicScalar acc = AdicScalar::zero(ring);
      for (const auto& [c, e] : b->row(r)) acc += e * v.at(c);
      return acc;
    };
    const long back = b->steady().empty() ? 0 : std::max(0L, -b->min_offset());
    const std::size_t steady_from = std::max(b->threshold(), v.prefix.size() + static_cast<std::size_t>(back));
    Column out{ring, {}, std::nullopt};
    for (std::size_t r = 0; r < steady_from; ++r) out.prefix.push_back(row_sum(r));
    out.tail = row_sum(steady_from);
    return out;
  }
  if (const auto* rows = std::get_if<RowList>(&m.body())) {
    if (rows->empty()) return Column{v.ring, {}, std::nullopt};
    Column out{rows->front().ring(), {}, std::nullopt};
    for (const auto& f : *rows) out.prefix.push_back(eval_contraaction(f, v));
    return out;
  }
  throw BackendUnsupported("apply_product_map: matrices over r act on r^X, not on scalar columns");
}

ProjectorDuality check_projector_duality(const EndoElement& e) {
  ProjectorDuality out;
  const DualityMatrix contra(EndoGrid{{e}}, Orientation::kContra, "1", "1");
  const DualityMatrix prod = dual_matrix(contra);
  out.orientation_flipped = prod.orientation() == Orientation::kProduct;
  out.same_matrix = prod.body() == contra.body();
  out.idempotent_both_sides = compose_contra(contra, contra) == contra && compose_prod(prod, prod) == prod;
  if (!e.is_finite()) {
    out.images_match = out.idempotent_both_sides;
    return out;
  }
  // Contra side s |-> s e has image r e, product side v |-> e v has image e r;
  // each must be the fixed points of its projector and split off its complement.
  const EndoBasis basis(e.module_ptr());
  const EndoElement one = EndoElement::identity(e.module_ptr());
  FpSpan left_image(basis.prime(), basis.dimension()), left_rest(basis.prime(), basis.dimension());
  FpSpan right_image(basis.prime(), basis.dimension()), right_rest(basis.prime(), basis.dimension());
  bool fixed = true;
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    const EndoElement& s = basis.basis_element(k);
    const EndoElement l = s * e;
    const EndoElement r = e * s;
    fixed = fixed && l * e == l && e * r == r;
    left_image.insert(basis.coordinates(l));
    right_image.insert(basis.coordinates(r));
    left_rest.insert(basis.coordinates(s * (one - e)));
    right_rest.insert(basis.coordinates((one - e) * s));
  }
  out.images_match = fixed && left_image.rank() + left_rest.rank() == basis.dimension() &&
                     right_image.rank() + right_rest.rank() == basis.dimension();
  return out;
}

}  // namespace semiperfect
