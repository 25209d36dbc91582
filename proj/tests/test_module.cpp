#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "semiperfect/errors.hpp"
#include "support.hpp"

using namespace semiperfect;
using namespace testing_support;

namespace {

const RingDescriptor F2N4 = RingDescriptor::truncated(2, 4);

ScalarMatrix M(const RingDescriptor& r, std::vector<std::vector<const char*>> rows) {
  return ScalarMatrix::from_rows(r, rows_of(r, std::move(rows)));
}

std::vector<unsigned> exponents(const DecomposedModule& m) {
  std::vector<unsigned> out;
  for (const auto& s : m.summands()) out.push_back(s.exponent);
  return out;
}

// Number of F_p-linear maps R/t^a -> R/t^b commuting with t.
std::size_t count_module_maps(int p, unsigned a, unsigned b) {
  model::Mat ta = model::t_action(model::Space(p, {a}));
  model::Mat tb = model::t_action(model::Space(p, {b}));
  std::size_t total = 1;
  for (unsigned k = 0; k < a * b; ++k) total *= static_cast<std::size_t>(p);
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::vector<int>> x(a, std::vector<int>(b));
    std::size_t c = code;
    for (unsigned k = 0; k < a * b; ++k) {
      x[k / b][k % b] = static_cast<int>(c % static_cast<std::size_t>(p));
      c /= static_cast<std::size_t>(p);
    }
    bool ok = true;
    for (unsigned i = 0; i < a && ok; ++i) {
      for (unsigned j = 0; j < b && ok; ++j) {
        int lhs = 0, rhs = 0;
        for (unsigned k = 0; k < a; ++k) lhs += ta[i][k] * x[k][j];
        for (unsigned k = 0; k < b; ++k) rhs += x[i][k] * tb[k][j];
        ok = (lhs - rhs) % p == 0;
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("smith examples") {
  CHECK(exponents(smith_decompose(M(F2N4, {{"t", "0"}, {"0", "t^2"}})).module) == std::vector<unsigned>{1, 2});
  CHECK(exponents(smith_decompose(M(F2N4, {{"t", "t"}, {"0", "t^2"}})).module) == std::vector<unsigned>{1, 2});
  CHECK(exponents(smith_decompose(M(F2N4, {{"t", "1"}, {"0", "t"}})).module) == std::vector<unsigned>{2});
  // zero rows give full summands R/t^N
  CHECK(exponents(smith_decompose(M(F2N4, {{"0"}, {"t^3"}})).module) == std::vector<unsigned>{3, 4});
  CHECK_THROWS_AS(smith_decompose(ScalarMatrix(RingDescriptor::pattern(2), 1, 1)), BackendUnsupported);
}

TEST_CASE("smith witnesses reconstruct the presentation") {
  Gen g;
  for (const auto& ring : {F2N4, RingDescriptor::truncated(3, 3)}) {
    for (int k = 0; k < 40; ++k) {
      const auto rows = static_cast<std::size_t>(g.uniform(1, 4));
      const auto cols = static_cast<std::size_t>(g.uniform(1, 4));
      const ScalarMatrix a = g.matrix(ring, rows, cols);
      const SmithResult s = smith_decompose(a);
      CHECK(s.row_transform * s.row_inverse == ScalarMatrix::identity(ring, rows));
      CHECK(s.col_transform * s.col_inverse == ScalarMatrix::identity(ring, cols));
      CHECK(s.row_transform * a * s.col_transform == s.diagonal);
      CHECK(s.row_inverse * s.diagonal * s.col_inverse == a);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          if (r != c) CHECK(s.diagonal.at(r, c).is_zero());
        }
      }
      const auto e = exponents(s.module);
      CHECK(std::is_sorted(e.begin(), e.end()));
    }
  }
}

TEST_CASE("smith invariant under invertible changes of basis") {
  Gen g;
  for (const auto& ring : {F2N4, RingDescriptor::truncated(3, 3)}) {
    for (int k = 0; k < 40; ++k) {
      const auto n = static_cast<std::size_t>(g.uniform(1, 4));
      const auto m = static_cast<std::size_t>(g.uniform(1, 4));
      const ScalarMatrix a = g.matrix(ring, n, m);
      const ScalarMatrix b = g.invertible(ring, n) * a * g.invertible(ring, m);
      CHECK(exponents(smith_decompose(a).module) == exponents(smith_decompose(b).module));
    }
  }
}

TEST_CASE("hom_block_shape") {
  CHECK(hom_block_shape(LocalModule::torsion(1), LocalModule::torsion(3)) == 1);
  CHECK(hom_block_shape(LocalModule::torsion(2), LocalModule::torsion(2)) == 2);
  CHECK(hom_block_shape(LocalModule::torsion(1), LocalModule::free()) == 0);
  CHECK(hom_block_shape(LocalModule::free(), LocalModule::free()) == kFullRankHom);
}

TEST_CASE("hom_block_shape against brute force over F_2") {
  for (unsigned a = 1; a <= 3; ++a) {
    for (unsigned b = 1; b <= 3; ++b) {
      const unsigned shape = hom_block_shape(LocalModule::torsion(a), LocalModule::torsion(b));
      CHECK(count_module_maps(2, a, b) == (std::size_t{1} << shape));
    }
  }
  CHECK(count_module_maps(3, 2, 3) == 9);
}

TEST_CASE("iso classes partition the summands") {
  const ModulePtr m = torsion_module(F2N4, {1, 2, 2});
  const auto classes = m->iso_classes();
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].members == std::vector<std::size_t>{0});
  CHECK(classes[1].members == std::vector<std::size_t>{1, 2});
  CHECK_THROWS(DecomposedModule::finite(F2N4, {LocalModule::torsion(5)}));
  CHECK_THROWS(DecomposedModule::finite(F2N4, {LocalModule::free()}));
}
