#include "semiperfect/fp_linalg.hpp"

#include <stdexcept>

namespace semiperfect {

FpSpan::FpSpan(Coeff p, std::size_t dim, bool track_combinations)
    : p_(p), dim_(dim), track_(track_combinations) {}

FpVector FpSpan::reduce(FpVector& v, FpVector* combination) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Coeff c = v[pivots_[r]];
    if (c == 0) continue;
    const FpVector& row = rows_[r];
    for (std::size_t k = pivots_[r]; k < dim_; ++k) {
      if (row[k] != 0) v[k] = fp::sub(v[k], fp::mul(c, row[k], p_), p_);
    }
    if (combination != nullptr) {
      const FpVector& combo = combos_[r];
      for (std::size_t g = 0; g < combo.size(); ++g) {
        if (combo[g] != 0) (*combination)[g] = fp::add((*combination)[g], fp::mul(c, combo[g], p_), p_);
      }
    }
  }
  return v;
}

bool FpSpan::insert(const FpVector& v) {
  if (v.size() != dim_) throw std::invalid_argument("FpSpan::insert: dimension mismatch");
  const std::size_t g = generators_++;
  if (track_) {
    for (auto& combo : combos_) combo.resize(generators_, 0);
  }
  FpVector w = v;
  FpVector used(track_ ? generators_ : 0, 0);
  reduce(w, track_ ? &used : nullptr);
  std::size_t pivot = 0;
  while (pivot < dim_ && w[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  // w = v - sum used_r rows_r  =>  w expressed as generator_g - sum used_r combo_r.
  FpVector combo;
  if (track_) {
    combo.assign(generators_, 0);
    for (std::size_t k = 0; k < generators_; ++k) combo[k] = fp::sub(0, used[k], p_);
    combo[g] = fp::add(combo[g], 1, p_);
  }
  const Coeff inv = fp::inv(w[pivot], p_);
  for (auto& c : w) c = fp::mul(c, inv, p_);
  for (auto& c : combo) c = fp::mul(c, inv, p_);
  // Keep rows sorted by pivot so reduce() eliminates in a single pass.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
  if (track_) combos_.insert(combos_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(combo));
  return true;
}

bool FpSpan::contains(const FpVector& v) const {
  FpVector w = v;
  reduce(w, nullptr);
  for (Coeff c : w) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<FpVector> FpSpan::express(const FpVector& v) const {
  if (!track_) throw std::logic_error("FpSpan::express requires tracked combinations");
  FpVector w = v;
  FpVector used(generators_, 0);
  reduce(w, &used);
  for (Coeff c : w) {
    if (c != 0) return std::nullopt;
  }
  return used;
}

FpMatrix::FpMatrix(Coeff p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(Coeff p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("FpMatrix: shape mismatch");
  FpMatrix r(p_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Coeff a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        r.at(i, j) = fp::add(r.at(i, j), fp::mul(a, other.at(k, j), p_), p_);
      }
    }
  }
  return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("FpMatrix: shape mismatch");
  FpMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = fp::add(data_[i], other.data_[i], p_);
  return r;
}

FpVector FpMatrix::row(std::size_t r) const {
  return FpVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::size_t FpMatrix::rank() const {
  FpSpan span(p_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) span.insert(row(r));
  return span.rank();
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  FpMatrix a = *this;
  FpMatrix inv = identity(p_, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a.at(c, k), a.at(piv, k));
      std::swap(inv.at(c, k), inv.at(piv, k));
    }
    const Coeff s = fp::inv(a.at(c, c), p_);
    for (std::size_t k = 0; k < n; ++k) {
      a.at(c, k) = fp::mul(a.at(c, k), s, p_);
      inv.at(c, k) = fp::mul(inv.at(c, k), s, p_);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      const Coeff f = a.at(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a.at(r, k) = fp::sub(a.at(r, k), fp::mul(f, a.at(c, k), p_), p_);
        inv.at(r, k) = fp::sub(inv.at(r, k), fp::mul(f, inv.at(c, k), p_), p_);
      }
    }
  }
  return inv;
}

std::optional<FpVector> FpMatrix::left_kernel_vector() const {
  // A dependency among the rows is a left kernel vector.
  FpSpan span(p_, cols_, true);
  for (std::size_t r = 0; r < rows_; ++r) {
    FpVector v = row(r);
    if (auto combo = span.express(v)) {
      FpVector x(rows_, 0);
      for (std::size_t k = 0; k < combo->size(); ++k) x[k] = fp::sub(0, (*combo)[k], p_);
      x[r] = 1;
      return x;
    }
    span.insert(v);
  }
  return std::nullopt;
}

}  // namespace semiperfect
