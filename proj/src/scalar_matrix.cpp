#include "semiperfect/scalar_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace semiperfect {

ScalarMatrix::ScalarMatrix(const RingDescriptor& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, AdicScalar::zero(ring)) {}

ScalarMatrix ScalarMatrix::identity(const RingDescriptor& ring, std::size_t n) {
  ScalarMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = AdicScalar::one(ring);
  return m;
}

ScalarMatrix ScalarMatrix::from_rows(const RingDescriptor& ring,
                                     const std::vector<std::vector<AdicScalar>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ScalarMatrix m(ring, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ScalarMatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("ScalarMatrix: shape mismatch in product");
  ScalarMatrix r(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) r.at(i, j) += at(i, k) * other.at(k, j);
    }
  }
  return r;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("ScalarMatrix: shape mismatch");
  ScalarMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += other.data_[i];
  return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("ScalarMatrix: shape mismatch");
  ScalarMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
  return r;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  }
  return r;
}

void ScalarMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
}

void ScalarMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, a), at(r, b));
}

void ScalarMatrix::add_row_multiple(std::size_t target, std::size_t source, const AdicScalar& factor) {
  if (factor.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c) at(target, c) += factor * at(source, c);
}

void ScalarMatrix::add_col_multiple(std::size_t target, std::size_t source, const AdicScalar& factor) {
  if (factor.is_zero()) return;
  for (std::size_t r = 0; r < rows_; ++r) at(r, target) += at(r, source) * factor;
}

void ScalarMatrix::scale_row(std::size_t r, const AdicScalar& factor) {
  for (std::size_t c = 0; c < cols_; ++c) at(r, c) *= factor;
}

std::string ScalarMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::optional<ScalarMatrix> invert_over_local_ring(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  ScalarMatrix a = m;
  ScalarMatrix inv = ScalarMatrix::identity(m.ring(), n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !a.at(piv, c).is_unit()) ++piv;
    if (piv == n) return std::nullopt;
    a.swap_rows(c, piv);
    inv.swap_rows(c, piv);
    const AdicScalar s = a.at(c, c).invert();
    a.scale_row(c, s);
    inv.scale_row(c, s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a.at(r, c).is_zero()) continue;
      const AdicScalar f = -a.at(r, c);
      a.add_row_multiple(r, c, f);
      inv.add_row_multiple(r, c, f);
    }
  }
  return inv;
}

}  // namespace semiperfect
