#pragma once

// Row-finite omega x omega matrices given by finitely many constant diagonal
// bands plus a finite sparse perturbation. Rows at or beyond threshold() are
// "steady": row r holds exactly the band entries at columns r + offset.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semiperfect/adic.hpp"

namespace semiperfect {

struct Band {
  long offset = 0;  // entry (r, r + offset)
  AdicScalar entry;
  std::size_t from = 0;  // first row carrying the band
};

struct SparseEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  AdicScalar value;
};

using MatrixRow = std::vector<std::pair<std::size_t, AdicScalar>>;  // (col, nonzero value), sorted

class PatternMatrix {
 public:
  /// Zero matrix over the residue field F_2 (placeholder).
  PatternMatrix();
  /// Builds the canonical form of sum(bands) + sum(sparse). Overlapping
  /// contributions add. Band entries outside omega (negative columns) vanish.
  PatternMatrix(const RingDescriptor& ring, const std::vector<Band>& bands,
                const std::vector<SparseEntry>& sparse);

  static PatternMatrix zero(const RingDescriptor& ring);
  static PatternMatrix identity(const RingDescriptor& ring);
  static PatternMatrix band(const RingDescriptor& ring, long offset, const AdicScalar& entry,
                            std::size_t from = 0);
  static PatternMatrix sparse(const RingDescriptor& ring, const std::vector<SparseEntry>& entries);

  const RingDescriptor& ring() const { return ring_; }
  std::size_t threshold() const { return threshold_; }
  /// Steady bands: offset -> entry (nonzero), valid for rows >= threshold().
  const std::map<long, AdicScalar>& steady() const { return steady_; }
  /// Rows below threshold(), nonzero entries only.
  const std::vector<MatrixRow>& head_rows() const { return head_; }

  MatrixRow row(std::size_t r) const;
  AdicScalar entry(std::size_t r, std::size_t c) const;
  bool row_is_zero(std::size_t r) const;
  bool is_zero() const;
  /// True when the matrix has finitely many nonzero entries.
  bool is_finitary() const { return steady_.empty(); }
  /// Canonical band list (from = threshold()).
  std::vector<Band> bands() const;
  /// Every nonzero entry in rows below threshold().
  std::vector<SparseEntry> sparse_entries() const;
  long min_offset() const;
  long max_offset() const;

  PatternMatrix operator-() const;
  PatternMatrix operator+(const PatternMatrix& other) const;
  PatternMatrix operator-(const PatternMatrix& other) const;
  /// Row-vector convention: (x * (A * B)) == ((x * A) * B).
  PatternMatrix operator*(const PatternMatrix& other) const;
  PatternMatrix scaled(const AdicScalar& c) const;
  /// Translates every entry (r, c) to (r + k, c + k).
  PatternMatrix shifted(std::size_t k) const;
  /// Applies f entrywise (f(0) must be 0); the result may live over another ring.
  template <class F>
  PatternMatrix map_entries(const RingDescriptor& target, F&& f) const;

  friend bool operator==(const PatternMatrix& a, const PatternMatrix& b);

  std::string to_string() const;

 private:
  PatternMatrix(RingDescriptor ring, std::size_t threshold, std::map<long, AdicScalar> steady,
                std::vector<MatrixRow> head);
  void trim_threshold();

  RingDescriptor ring_;
  std::size_t threshold_ = 0;
  std::map<long, AdicScalar> steady_;
  std::vector<MatrixRow> head_;
};

template <class F>
PatternMatrix PatternMatrix::map_entries(const RingDescriptor& target, F&& f) const {
  std::map<long, AdicScalar> steady;
  for (const auto& [d, v] : steady_) {
    AdicScalar w = f(v);
    if (!w.is_zero()) steady.emplace(d, std::move(w));
  }
  std::vector<MatrixRow> head(head_.size());
  for (std::size_t r = 0; r < head_.size(); ++r) {
    for (const auto& [c, v] : head_[r]) {
      AdicScalar w = f(v);
      if (!w.is_zero()) head[r].emplace_back(c, std::move(w));
    }
  }
  PatternMatrix m(target, threshold_, std::move(steady), std::move(head));
  m.trim_threshold();
  return m;
}

}  // namespace semiperfect
