#pragma once

// Matrix calculus behind the duality between free contramodules r[[Y]] and
// products r^X: a row-zero-convergent Y x X matrix A is both the morphism
// r[[Y]] -> r[[X]], s |-> s A, and the continuous map r^X -> r^Y, v |-> A v.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semiperfect/adic.hpp"
#include "semiperfect/endo.hpp"
#include "semiperfect/pattern_matrix.hpp"
#include "semiperfect/scalar_matrix.hpp"

namespace semiperfect {

/// Entries a * t^(c * (k - from)) for k >= from.
struct GeometricTail {
  std::size_t from = 0;
  AdicScalar first;
  unsigned ratio_power = 1;  // c
};

/// Element of A[[X]] for X finite or omega. Entries past the prefix are zero
/// unless a geometric tail is present; the tail overrides the prefix.
class FormalFamily {
 public:
  FormalFamily() = default;
  static FormalFamily finite(const RingDescriptor& ring, std::vector<AdicScalar> entries);
  static FormalFamily omega(const RingDescriptor& ring, std::vector<AdicScalar> prefix,
                            std::optional<GeometricTail> tail = std::nullopt);
  static FormalFamily point_mass(const RingDescriptor& ring, std::size_t size, std::size_t at);

  const RingDescriptor& ring() const { return ring_; }
  bool is_omega() const { return omega_; }
  /// Number of indices (finite families only).
  std::size_t size() const { return prefix_.size(); }
  const std::vector<AdicScalar>& prefix() const { return prefix_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }
  AdicScalar coefficient(std::size_t k) const;
  /// Valuations tend to infinity along the index set.
  bool is_zero_convergent() const;

  friend bool operator==(const FormalFamily&, const FormalFamily&);
  std::string to_string() const;

 private:
  RingDescriptor ring_;
  bool omega_ = false;
  std::vector<AdicScalar> prefix_;
  std::optional<GeometricTail> tail_;
};

/// X-indexed column of scalars: explicit prefix, then (over omega) constant.
struct Column {
  RingDescriptor ring;
  std::vector<AdicScalar> prefix;
  std::optional<AdicScalar> tail;

  AdicScalar at(std::size_t k) const;
  friend bool operator==(const Column&, const Column&);
};

/// sum_x coeffs(x) * values(x) as the exact limit of partial sums.
AdicScalar eval_contraaction(const FormalFamily& coeffs, const Column& values);
/// Componentwise evaluation for values in a free module of finite rank.
std::vector<AdicScalar> eval_contraaction(const FormalFamily& coeffs, const std::vector<Column>& components);

enum class Orientation { kContra, kProduct };
enum class DualDirection { kContraToProd, kProdToContra };
const char* to_string(Orientation o);

class DualityMatrix {
 public:
  using EndoGrid = std::vector<std::vector<EndoElement>>;
  using RowList = std::vector<FormalFamily>;
  using Body = std::variant<ScalarMatrix, EndoGrid, PatternMatrix, RowList>;

  DualityMatrix(Body body, Orientation orientation, std::string rows = "Y", std::string cols = "X");

  const Body& body() const { return body_; }
  Orientation orientation() const { return orientation_; }
  const std::string& row_label() const { return rows_; }
  const std::string& col_label() const { return cols_; }
  bool is_dense() const;
  /// Finite dimensions; nullopt for omega.
  std::optional<std::size_t> row_count() const;
  std::optional<std::size_t> col_count() const;

  friend bool operator==(const DualityMatrix&, const DualityMatrix&);

 private:
  Body body_;
  Orientation orientation_;
  std::string rows_;
  std::string cols_;
};

bool check_row_zero_convergent(const DualityMatrix& m);

/// The same matrix read on the other side. Throws NotRowConvergent.
DualityMatrix dual_matrix(const DualityMatrix& m);
/// As above; ValidationError when m does not start on the stated side.
DualityMatrix dual_matrix(const DualityMatrix& m, DualDirection direction);

/// Matrix of "first f, then g" among contramodule morphisms: f * g.
DualityMatrix compose_contra(const DualityMatrix& f, const DualityMatrix& g);
/// Matrix of "first f, then g" among product maps: g * f.
DualityMatrix compose_prod(const DualityMatrix& f, const DualityMatrix& g);

/// Y-indexed column (A v)_y = sum_x A(y, x) v(x). Throws NotSummable.
Column apply_product_map(const DualityMatrix& m, const Column& v);

struct ProjectorDuality {
  bool orientation_flipped = false;
  bool same_matrix = false;
  bool idempotent_both_sides = false;
  /// Truncated backend: images are r e (contra side) and e r (product side).
  bool images_match = false;
};

/// The projector [e] of r[[1]] onto r e, dualized, is the projector of r^1
/// onto e r.
ProjectorDuality check_projector_duality(const EndoElement& e);

}  // namespace semiperfect
