#pragma once

// Dense linear algebra over the prime field F_p. Everything in the truncated
// backend is a finite F_p-vector space, so submodule, ideal and membership
// questions reduce to the incremental echelon basis below.

#include <cstddef>
#include <optional>
#include <vector>

#include "semiperfect/adic.hpp"

namespace semiperfect {

using FpVector = std::vector<Coeff>;

/// Incrementally built row-echelon basis of a subspace of F_p^dim.
/// Optionally tracks, for each stored basis vector, its expression as a
/// combination of the inserted generators, which is what makes solve() work.
class FpSpan {
 public:
  FpSpan(Coeff p, std::size_t dim, bool track_combinations = false);

  /// Inserts a generator; returns true when it enlarged the span.
  bool insert(const FpVector& v);
  bool contains(const FpVector& v) const;
  /// Coefficients c with sum_k c_k * generator_k == v, or nullopt.
  std::optional<FpVector> express(const FpVector& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dim_; }
  std::size_t generator_count() const { return generators_; }
  Coeff prime() const { return p_; }
  /// Reduced basis vectors (pivot coefficient 1).
  const std::vector<FpVector>& basis() const { return rows_; }

 private:
  // Reduces v against the basis; returns the combination used when tracking.
  FpVector reduce(FpVector& v, FpVector* combination) const;

  Coeff p_;
  std::size_t dim_;
  bool track_;
  std::size_t generators_ = 0;
  std::vector<FpVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<FpVector> combos_;  // combos_[r] expresses rows_[r] in generators
};

/// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix(Coeff p, std::size_t rows, std::size_t cols);
  static FpMatrix identity(Coeff p, std::size_t n);

  Coeff& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff prime() const { return p_; }

  FpMatrix operator*(const FpMatrix& other) const;
  FpMatrix operator+(const FpMatrix& other) const;
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  std::size_t rank() const;
  std::optional<FpMatrix> inverse() const;
  /// Nonzero row vector x with x * M == 0, if any.
  std::optional<FpVector> left_kernel_vector() const;
  FpVector row(std::size_t r) const;

 private:
  Coeff p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Coeff> data_;
};

}  // namespace semiperfect
