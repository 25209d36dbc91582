#include "semiperfect/pattern_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "semiperfect/errors.hpp"

namespace semiperfect {

namespace {

void add_into(MatrixRow& row, std::size_t col, const AdicScalar& v) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != row.end() && it->first == col) {
    it->second += v;
    if (it->second.is_zero()) row.erase(it);
  } else if (!v.is_zero()) {
    row.insert(it, {col, v});
  }
}

}  // namespace

PatternMatrix::PatternMatrix() : ring_(RingDescriptor::residue_field(2)) {}

PatternMatrix::PatternMatrix(RingDescriptor ring, std::size_t threshold, std::map<long, AdicScalar> steady,
                             std::vector<MatrixRow> head)
    : ring_(ring), threshold_(threshold), steady_(std::move(steady)), head_(std::move(head)) {}

PatternMatrix::PatternMatrix(const RingDescriptor& ring, const std::vector<Band>& bands,
                             const std::vector<SparseEntry>& sparse)
    : ring_(ring) {
  std::size_t t = 0;
  for (const auto& b : bands) {
    if (!(b.entry.ring() == ring)) throw Error("PatternMatrix: band entry ring mismatch");
    t = std::max(t, b.from);
    if (b.offset < 0) t = std::max(t, static_cast<std::size_t>(-b.offset));
    auto [it, inserted] = steady_.emplace(b.offset, b.entry);
    if (!inserted) it->second += b.entry;
  }
  std::erase_if(steady_, [](const auto& kv) { return kv.second.is_zero(); });
  for (const auto& s : sparse) {
    if (!(s.value.ring() == ring)) throw Error("PatternMatrix: sparse entry ring mismatch");
    t = std::max(t, s.row + 1);
  }
  threshold_ = t;
  head_.assign(t, {});
  for (const auto& b : bands) {
    for (std::size_t r = b.from; r < t; ++r) {
      const long c = static_cast<long>(r) + b.offset;
      if (c >= 0) add_into(head_[r], static_cast<std::size_t>(c), b.entry);
    }
  }
  for (const auto& s : sparse) add_into(head_[s.row], s.col, s.value);
  trim_threshold();
}

void PatternMatrix::trim_threshold() {
  const long min_off = steady_.empty() ? 0 : steady_.begin()->first;
  while (threshold_ > 0) {
    const std::size_t r = threshold_ - 1;
    if (static_cast<long>(r) + min_off < 0) break;
    const MatrixRow& explicit_row = head_[r];
    if (explicit_row.size() != steady_.size()) break;
    bool same = true;
    std::size_t k = 0;
    for (const auto& [d, v] : steady_) {
      const auto& [c, w] = explicit_row[k++];
      if (c != static_cast<std::size_t>(static_cast<long>(r) + d) || !(v == w)) {
        same = false;
        break;
      }
    }
    if (!same) break;
    head_.pop_back();
    --threshold_;
  }
}

PatternMatrix PatternMatrix::zero(const RingDescriptor& ring) { return PatternMatrix(ring, {}, {}); }

PatternMatrix PatternMatrix::identity(const RingDescriptor& ring) {
  return band(ring, 0, AdicScalar::one(ring), 0);
}

PatternMatrix PatternMatrix::band(const RingDescriptor& ring, long offset, const AdicScalar& entry,
                                  std::size_t from) {
  return PatternMatrix(ring, {Band{offset, entry, from}}, {});
}

PatternMatrix PatternMatrix::sparse(const RingDescriptor& ring, const std::vector<SparseEntry>& entries) {
  return PatternMatrix(ring, {}, entries);
}

MatrixRow PatternMatrix::row(std::size_t r) const {
  if (r < threshold_) return head_[r];
  MatrixRow out;
  out.reserve(steady_.size());
  for (const auto& [d, v] : steady_) out.emplace_back(static_cast<std::size_t>(static_cast<long>(r) + d), v);
  return out;
}

AdicScalar PatternMatrix::entry(std::size_t r, std::size_t c) const {
  if (r < threshold_) {
    for (const auto& [col, v] : head_[r]) {
      if (col == c) return v;
    }
    return AdicScalar::zero(ring_);
  }
  auto it = steady_.find(static_cast<long>(c) - static_cast<long>(r));
  return it == steady_.end() ? AdicScalar::zero(ring_) : it->second;
}

bool PatternMatrix::row_is_zero(std::size_t r) const {
  return r < threshold_ ? head_[r].empty() : steady_.empty();
}

bool PatternMatrix::is_zero() const {
  return steady_.empty() && std::all_of(head_.begin(), head_.end(), [](const MatrixRow& r) { return r.empty(); });
}

std::vector<Band> PatternMatrix::bands() const {
  std::vector<Band> out;
  for (const auto& [d, v] : steady_) out.push_back(Band{d, v, threshold_});
  return out;
}

std::vector<SparseEntry> PatternMatrix::sparse_entries() const {
  std::vector<SparseEntry> out;
  for (std::size_t r = 0; r < head_.size(); ++r) {
    for (const auto& [c, v] : head_[r]) out.push_back(SparseEntry{r, c, v});
  }
  return out;
}

long PatternMatrix::min_offset() const { return steady_.empty() ? 0 : steady_.begin()->first; }

long PatternMatrix::max_offset() const { return steady_.empty() ? 0 : steady_.rbegin()->first; }

PatternMatrix PatternMatrix::operator-() const {
  return map_entries(ring_, [](const AdicScalar& v) { return -v; });
}

PatternMatrix PatternMatrix::operator+(const PatternMatrix& other) const {
  if (!(ring_ == other.ring_)) throw Error("PatternMatrix: ring mismatch");
  const std::size_t t = std::max(threshold_, other.threshold_);
  std::map<long, AdicScalar> steady = steady_;
  for (const auto& [d, v] : other.steady_) {
    auto [it, inserted] = steady.emplace(d, v);
    if (!inserted) it->second += v;
  }
  std::erase_if(steady, [](const auto& kv) { return kv.second.is_zero(); });
  std::vector<MatrixRow> head(t);
  for (std::size_t r = 0; r < t; ++r) {
    head[r] = row(r);
    for (const auto& [c, v] : other.row(r)) add_into(head[r], c, v);
  }
  PatternMatrix m(ring_, t, std::move(steady), std::move(head));
  m.trim_threshold();
  return m;
}

PatternMatrix PatternMatrix::operator-(const PatternMatrix& other) const { return *this + (-other); }

PatternMatrix PatternMatrix::operator*(const PatternMatrix& other) const {
  if (!(ring_ == other.ring_)) throw Error("PatternMatrix: ring mismatch");
  const long neg = std::max(0L, -min_offset());
  const std::size_t t = std::max(threshold_, other.threshold_ + static_cast<std::size_t>(neg));
  std::map<long, AdicScalar> steady;
  for (const auto& [d1, v1] : steady_) {
    for (const auto& [d2, v2] : other.steady_) {
      auto [it, inserted] = steady.emplace(d1 + d2, v1 * v2);
      if (!inserted) it->second += v1 * v2;
    }
  }
  std::erase_if(steady, [](const auto& kv) { return kv.second.is_zero(); });
  std::vector<MatrixRow> head(t);
  for (std::size_t r = 0; r < t; ++r) {
    for (const auto& [c, a] : row(r)) {
      for (const auto& [c2, b] : other.row(c)) add_into(head[r], c2, a * b);
    }
  }
  PatternMatrix m(ring_, t, std::move(steady), std::move(head));
  m.trim_threshold();
  return m;
}

PatternMatrix PatternMatrix::scaled(const AdicScalar& c) const {
  return map_entries(ring_, [&](const AdicScalar& v) { return v * c; });
}

PatternMatrix PatternMatrix::shifted(std::size_t k) const {
  if (k == 0) return *this;
  std::vector<MatrixRow> head(threshold_ + k);
  for (std::size_t r = 0; r < threshold_; ++r) {
    for (const auto& [c, v] : head_[r]) head[r + k].emplace_back(c + k, v);
  }
  PatternMatrix m(ring_, threshold_ + k, steady_, std::move(head));
  m.trim_threshold();
  return m;
}

bool operator==(const PatternMatrix& a, const PatternMatrix& b) {
  return a.ring_ == b.ring_ && a.threshold_ == b.threshold_ && a.steady_ == b.steady_ && a.head_ == b.head_;
}

std::string PatternMatrix::to_string() const {
  std::ostringstream os;
  os << "{bands: [";
  bool first = true;
  for (const auto& [d, v] : steady_) {
    os << (first ? "" : ", ") << "(offset " << d << ", " << v << ", from " << threshold_ << ")";
    first = false;
  }
  os << "], sparse: [";
  first = true;
  for (const auto& e : sparse_entries()) {
    os << (first ? "" : ", ") << "(" << e.row << "," << e.col << ": " << e.value << ")";
    first = false;
  }
  os << "]}";
  return os.str();
}

}  // namespace semiperfect
