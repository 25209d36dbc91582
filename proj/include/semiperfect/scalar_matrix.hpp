#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semiperfect/adic.hpp"

namespace semiperfect {

/// Dense rectangular matrix of AdicScalar over one ring.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(const RingDescriptor& ring, std::size_t rows, std::size_t cols);
  static ScalarMatrix identity(const RingDescriptor& ring, std::size_t n);
  static ScalarMatrix from_rows(const RingDescriptor& ring, const std::vector<std::vector<AdicScalar>>& rows);

  const RingDescriptor& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  AdicScalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const AdicScalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ScalarMatrix operator*(const ScalarMatrix& other) const;
  ScalarMatrix operator+(const ScalarMatrix& other) const;
  ScalarMatrix operator-(const ScalarMatrix& other) const;
  ScalarMatrix transpose() const;
  friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const AdicScalar& factor);
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const AdicScalar& factor);
  void scale_row(std::size_t r, const AdicScalar& factor);

  std::string to_string() const;

 private:
  RingDescriptor ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<AdicScalar> data_;
};

/// Inverse over a local base ring (Gauss-Jordan with unit pivots);
/// nullopt when the residue matrix is singular.
std::optional<ScalarMatrix> invert_over_local_ring(const ScalarMatrix& m);

}  // namespace semiperfect
