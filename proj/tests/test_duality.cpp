#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "semiperfect/duality.hpp"
#include "semiperfect/errors.hpp"
#include "semiperfect/idempotents.hpp"
#include "support.hpp"

using namespace semiperfect;
using namespace testing_support;

namespace {

const RingDescriptor F2N4 = RingDescriptor::truncated(2, 4);
const RingDescriptor F2N6 = RingDescriptor::truncated(2, 6);
const RingDescriptor F3N3 = RingDescriptor::truncated(3, 3);
const RingDescriptor A2 = RingDescriptor::pattern(2);
const RingDescriptor A3 = RingDescriptor::pattern(3);

AdicScalar S(const RingDescriptor& r, const char* s) { return AdicScalar::parse(r, s); }

Column ones(const RingDescriptor& r) { return Column{r, {}, AdicScalar::one(r)}; }

DualityMatrix contra(DualityMatrix::Body b) { return DualityMatrix(std::move(b), Orientation::kContra); }

Column random_column(Gen& g, const RingDescriptor& r, std::size_t n) {
  Column c{r, {}, std::nullopt};
  for (std::size_t k = 0; k < n; ++k) c.prefix.push_back(g.scalar(r));
  return c;
}

PatternMatrix random_pattern(Gen& g, const RingDescriptor& r) {
  std::vector<Band> bands;
  for (long long b = g.uniform(0, 2); b > 0; --b) {
    bands.push_back(Band{static_cast<long>(g.uniform(0, 2)), g.scalar(r), static_cast<std::size_t>(g.uniform(0, 2))});
  }
  std::vector<SparseEntry> sparse;
  for (long long s = g.uniform(0, 3); s > 0; --s) {
    sparse.push_back(SparseEntry{static_cast<std::size_t>(g.uniform(0, 3)), static_cast<std::size_t>(g.uniform(0, 4)), g.scalar(r)});
  }
  return PatternMatrix(r, bands, sparse);
}

FormalFamily random_row(Gen& g, const RingDescriptor& r) {
  std::vector<AdicScalar> prefix;
  for (long long k = g.uniform(0, 3); k > 0; --k) prefix.push_back(g.scalar(r));
  std::optional<GeometricTail> tail;
  if (g.coin()) tail = GeometricTail{prefix.size() + static_cast<std::size_t>(g.uniform(0, 2)), g.scalar(r),
                                     static_cast<unsigned>(g.uniform(1, 2))};
  return FormalFamily::omega(r, prefix, tail);
}

void check_columns_equal(const Column& a, const Column& b, std::size_t upto) {
  for (std::size_t k = 0; k < upto; ++k) CHECK(a.at(k) == b.at(k));
}

}  // namespace

TEST_CASE("eval_contraaction examples") {
  const Column v{F2N4, {S(F2N4, "1"), S(F2N4, "t"), S(F2N4, "1 + t^3")}, std::nullopt};
  for (std::size_t x = 0; x < 3; ++x) CHECK(eval_contraaction(FormalFamily::point_mass(F2N4, 3, x), v) == v.at(x));

  const FormalFamily powers =
      FormalFamily::omega(F2N4, {S(F2N4, "1"), S(F2N4, "t"), S(F2N4, "t^2"), S(F2N4, "t^3")});
  CHECK(eval_contraaction(powers, ones(F2N4)) == S(F2N4, "1 + t + t^2 + t^3"));

  const FormalFamily geometric = FormalFamily::omega(A2, {}, GeometricTail{0, AdicScalar::one(A2), 1});
  const AdicScalar s = eval_contraaction(geometric, ones(A2));
  CHECK(s == S(A2, "(1)/(1 + t)"));  // 1/(1 - t) over F_2
  CHECK(s * (AdicScalar::one(A2) - S(A2, "t")) == AdicScalar::one(A2));
  // cross-check against the truncation at N = 6
  const AdicScalar truncated = eval_contraaction(FormalFamily::omega(F2N6, {}, GeometricTail{0, AdicScalar::one(F2N6), 1}), ones(F2N6));
  naive::Vec expect(6, 1);
  CHECK(naive::coeffs(truncated) == expect);
  // same series over F_3: 1/(1-t)
  CHECK(eval_contraaction(FormalFamily::omega(A3, {}, GeometricTail{0, AdicScalar::one(A3), 1}), ones(A3)) ==
        S(A3, "(1)/(1 + 2*t)"));

  const FormalFamily constant = FormalFamily::omega(A2, {}, GeometricTail{0, AdicScalar::one(A2), 0});
  CHECK_THROWS_AS(eval_contraaction(constant, ones(A2)), NotSummable);
}

TEST_CASE("monad laws on finite supports") {
  Gen g;
  for (const auto& r : {F2N4, F3N3, A2, A3}) {
    for (int k = 0; k < 30; ++k) {
      const auto n = static_cast<std::size_t>(g.uniform(1, 5));
      const Column v = random_column(g, r, n);
      // unit
      const auto x0 = static_cast<std::size_t>(g.uniform(0, static_cast<long long>(n) - 1));
      CHECK(eval_contraaction(FormalFamily::point_mass(r, n, x0), v) == v.at(x0));
      // associativity: a family of families, evaluated stepwise or flattened
      const auto m = static_cast<std::size_t>(g.uniform(1, 4));
      std::vector<FormalFamily> inner;
      std::vector<AdicScalar> outer;
      std::vector<AdicScalar> flat(n, AdicScalar::zero(r));
      Column inner_values{r, {}, std::nullopt};
      for (std::size_t y = 0; y < m; ++y) {
        std::vector<AdicScalar> e;
        for (std::size_t x = 0; x < n; ++x) e.push_back(g.scalar(r));
        outer.push_back(g.scalar(r));
        for (std::size_t x = 0; x < n; ++x) flat[x] += outer.back() * e[x];
        inner.push_back(FormalFamily::finite(r, e));
        inner_values.prefix.push_back(eval_contraaction(inner.back(), v));
      }
      CHECK(eval_contraaction(FormalFamily::finite(r, outer), inner_values) ==
            eval_contraaction(FormalFamily::finite(r, flat), v));
    }
  }
}

TEST_CASE("dual_matrix examples") {
  const DualityMatrix id = contra(ScalarMatrix::identity(F2N4, 3));
  const DualityMatrix d = dual_matrix(id);
  CHECK(d.orientation() == Orientation::kProduct);
  CHECK(d.body() == id.body());
  CHECK(dual_matrix(id, DualDirection::kContraToProd) == d);
  CHECK_THROWS_AS(dual_matrix(id, DualDirection::kProdToContra), ValidationError);

  const DualityMatrix band = contra(PatternMatrix::band(A2, 1, S(A2, "t")));
  CHECK(dual_matrix(band).body() == band.body());
  CHECK(dual_matrix(band).orientation() == Orientation::kProduct);

  const DualityMatrix bad = contra(DualityMatrix::RowList{FormalFamily::omega(A2, {}, GeometricTail{0, AdicScalar::one(A2), 0})});
  CHECK_FALSE(check_row_zero_convergent(bad));
  CHECK_THROWS_AS(dual_matrix(bad), NotRowConvergent);
}

TEST_CASE("row zero-convergence") {
  CHECK(check_row_zero_convergent(contra(ScalarMatrix::identity(F2N4, 2))));
  CHECK(check_row_zero_convergent(contra(DualityMatrix::RowList{FormalFamily::omega(A2, {}, GeometricTail{0, AdicScalar::one(A2), 1})})));
  CHECK_FALSE(check_row_zero_convergent(contra(DualityMatrix::RowList{FormalFamily::omega(A2, {}, GeometricTail{0, AdicScalar::one(A2), 0})})));
}

TEST_CASE("apply_product_map examples") {
  const DualityMatrix a = dual_matrix(contra(ScalarMatrix::from_rows(F2N4, rows_of(F2N4, {{"t", "1"}, {"0", "t"}}))));
  const Column v{F2N4, {S(F2N4, "1"), S(F2N4, "1")}, std::nullopt};
  const Column out = apply_product_map(a, v);
  CHECK(out.prefix == std::vector<AdicScalar>{S(F2N4, "1 + t"), S(F2N4, "t")});
  CHECK(apply_product_map(dual_matrix(contra(ScalarMatrix::identity(F2N4, 2))), v).prefix == v.prefix);

  const Column shifted = apply_product_map(dual_matrix(contra(PatternMatrix::band(A2, 1, S(A2, "t")))), ones(A2));
  for (std::size_t k = 0; k < 10; ++k) CHECK(shifted.at(k) == S(A2, "t"));
}

TEST_CASE("involution and contravariance on random finite matrices") {
  Gen g;
  for (const auto& r : {F2N4, F3N3, A2}) {
    for (int k = 0; k < 35; ++k) {
      const auto a = static_cast<std::size_t>(g.uniform(1, 3)), b = static_cast<std::size_t>(g.uniform(1, 3)),
                 c = static_cast<std::size_t>(g.uniform(1, 3));
      const DualityMatrix f = contra(g.matrix(r, a, b)), h = contra(g.matrix(r, b, c));
      CHECK(dual_matrix(dual_matrix(f)) == f);
      CHECK(dual_matrix(compose_contra(f, h)) == compose_prod(dual_matrix(h), dual_matrix(f)));
      // semantic check: the dual of f h sends v to f (h v)
      const Column v = random_column(g, r, c);
      check_columns_equal(apply_product_map(dual_matrix(compose_contra(f, h)), v),
                          apply_product_map(dual_matrix(f), apply_product_map(dual_matrix(h), v)), a);
    }
  }
}

TEST_CASE("involution and contravariance on omega patterns") {
  Gen g;
  for (const auto& r : {A2, A3}) {
    for (int k = 0; k < 30; ++k) {
      const DualityMatrix p = contra(random_pattern(g, r)), q = contra(random_pattern(g, r));
      CHECK(dual_matrix(dual_matrix(p)) == p);
      CHECK(dual_matrix(compose_contra(p, q)) == compose_prod(dual_matrix(q), dual_matrix(p)));
      const Column v = random_column(g, r, static_cast<std::size_t>(g.uniform(0, 4)));
      check_columns_equal(apply_product_map(dual_matrix(compose_contra(p, q)), v),
                          apply_product_map(dual_matrix(p), apply_product_map(dual_matrix(q), v)), 16);

      // rows with geometric tails times a row-finite pattern
      DualityMatrix::RowList rows;
      for (int y = 0; y < 3; ++y) rows.push_back(random_row(g, r));
      const DualityMatrix f = contra(rows);
      CHECK(dual_matrix(dual_matrix(f)) == f);
      const DualityMatrix fq = compose_contra(f, q);
      CHECK(check_row_zero_convergent(fq));
      CHECK(dual_matrix(fq) == compose_prod(dual_matrix(q), dual_matrix(f)));
      Column w = random_column(g, r, static_cast<std::size_t>(g.uniform(0, 3)));
      w.tail = g.scalar(r);
      check_columns_equal(apply_product_map(dual_matrix(fq), w),
                          apply_product_map(dual_matrix(f), apply_product_map(dual_matrix(q), w)), 3);
      // coefficients of each product row against a direct finite convolution
      for (std::size_t y = 0; y < rows.size(); ++y) {
        const FormalFamily& row = std::get<DualityMatrix::RowList>(fq.body())[y];
        const PatternMatrix& qm = std::get<PatternMatrix>(q.body());
        for (std::size_t c = 0; c < 12; ++c) {
          AdicScalar expect = AdicScalar::zero(r);
          for (std::size_t x = 0; x <= c + 4; ++x) expect += rows[y].coefficient(x) * qm.entry(x, c);
          CHECK(row.coefficient(c) == expect);
        }
      }
    }
  }
}

TEST_CASE("projector duality") {
  Gen g;
  std::vector<EndoElement> idempotents;
  const ModulePtr m = torsion_module(F2N4, {2, 4, 4});
  const IdempotentFamily certified = certify_semiperfect(m);
  for (const auto& e : certified.members.head()) idempotents.push_back(e);
  for (int k = 0; k < 10; ++k) {
    for (const auto& part : SemisimpleElement::identity(m).primitive_decomposition()) {
      idempotents.push_back(hensel_lift_idempotent(section_lift(part) + g.radical_element(m)).idempotent);
    }
  }
  const ModulePtr w = omega_module(2);
  idempotents.push_back(EndoElement::from_pattern(w, PatternMatrix::sparse(A2, {SparseEntry{0, 0, AdicScalar::one(A2)}})));
  idempotents.push_back(EndoElement::from_pattern(
      w, PatternMatrix::sparse(A2, {SparseEntry{0, 0, AdicScalar::one(A2)}, SparseEntry{0, 1, S(A2, "t")}})));
  for (const auto& e : idempotents) {
    const ProjectorDuality d = check_projector_duality(e);
    CHECK(d.orientation_flipped);
    CHECK(d.same_matrix);
    CHECK(d.idempotent_both_sides);
    CHECK(d.images_match);
  }
  // a non-idempotent fails
  CHECK_FALSE(check_projector_duality(mat(m, {{"1", "0", "0"}, {"0", "1", "1"}, {"0", "1", "1"}})).idempotent_both_sides);
}
