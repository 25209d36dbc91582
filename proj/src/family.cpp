#include "semiperfect/family.hpp"

#include <algorithm>
#include <sstream>

#include "semiperfect/errors.hpp"

namespace semiperfect {

namespace {

// One past the largest row or column index carrying an entry.
std::size_t extent(const PatternMatrix& m) {
  std::size_t e = 0;
  for (const auto& s : m.sparse_entries()) e = std::max({e, s.row + 1, s.col + 1});
  return e;
}

}  // namespace

EndoFamily::EndoFamily(ModulePtr module, std::vector<EndoElement> head, std::optional<TranslationTail> tail)
    : module_(std::move(module)), head_(std::move(head)), tail_(std::move(tail)) {
  for (const auto& x : head_) {
    if (!(x.module() == *module_)) throw ValidationError("EndoFamily: member over a different module");
  }
  if (tail_) {
    if (!module_->is_omega()) throw ValidationError("EndoFamily: translation tails need an omega module");
    if (!tail_->templ.is_finitary()) throw ValidationError("EndoFamily: tail template must be finitary");
  }
}

std::optional<std::size_t> EndoFamily::size() const {
  if (tail_) return std::nullopt;
  return head_.size();
}

EndoElement EndoFamily::member(std::size_t k) const {
  if (k < head_.size()) return head_[k];
  if (!tail_) throw std::out_of_range("EndoFamily::member");
  const std::size_t shift = tail_->base + (k - head_.size());
  return EndoElement::from_pattern(module_, tail_->constant + tail_->templ.shifted(shift));
}

std::optional<EndoElement> EndoFamily::sum() const {
  EndoElement total = EndoElement::zero(module_);
  for (const auto& x : head_) total = total + x;
  if (!tail_) return total;
  if (!tail_->constant.is_zero()) return std::nullopt;
  // Every template entry (j, i, v) sweeps out the band of offset i - j from row base + j.
  std::vector<Band> bands;
  for (const auto& s : tail_->templ.sparse_entries()) {
    bands.push_back(Band{static_cast<long>(s.col) - static_cast<long>(s.row), s.value, tail_->base + s.row});
  }
  const PatternMatrix swept(module_->ring(), bands, {});
  return total + EndoElement::from_pattern(module_, swept);
}

std::string EndoFamily::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < head_.size(); ++k) os << (k ? "; " : "") << head_[k].to_string();
  if (tail_) {
    os << (head_.empty() ? "" : "; ") << "... tail k >= 0: " << tail_->constant.to_string() << " + shift("
       << tail_->templ.to_string() << ", " << tail_->base << " + k)";
  }
  os << "}";
  return os.str();
}

bool is_zero_convergent(const EndoFamily& family) {
  return !family.tail() || family.tail()->constant.is_zero();
}

bool is_zero_convergent(const EndoFamily& family, const std::vector<OpenIdealDescriptor>& basis) {
  if (!family.tail()) return true;
  const PatternMatrix& c = family.tail()->constant;
  for (const auto& e : basis) {
    for (std::size_t j : e.generators) {
      if (!c.row_is_zero(j)) return false;
    }
  }
  return true;
}

FamilyReport IdempotentFamily::validate() const {
  FamilyReport rep;
  std::ostringstream why;
  const EndoFamily& f = members;
  const auto& head = f.head();

  rep.zero_convergent = is_zero_convergent(f);
  if (!rep.zero_convergent) why << "tail constant is nonzero; ";

  // Members to test directly: the head, plus enough tail members that every
  // other tail member is a translate of one of them.
  std::vector<EndoElement> probe(head.begin(), head.end());
  std::size_t tail_probe = 0;
  if (f.tail()) {
    tail_probe = std::max<std::size_t>(1, extent(f.tail()->templ));
    for (const auto& x : head) {
      if (!x.pattern().is_finitary()) {
        why << "head member with infinite support next to a tail; ";
        tail_probe = 0;
        break;
      }
      tail_probe = std::max(tail_probe, extent(x.pattern()) + 1);
    }
    if (tail_probe == 0) return rep;
    for (std::size_t k = 0; k < tail_probe; ++k) probe.push_back(f.member(head.size() + k));
  }

  rep.idempotent = true;
  for (std::size_t a = 0; a < probe.size(); ++a) {
    if (!(probe[a] * probe[a] == probe[a])) {
      rep.idempotent = false;
      why << "member " << a << " is not idempotent; ";
      break;
    }
  }
  rep.orthogonal = true;
  for (std::size_t a = 0; a < probe.size() && rep.orthogonal; ++a) {
    // Tail-tail pairs are translation invariant: fixing the first tail member suffices.
    const bool a_in_tail = a >= head.size();
    if (a_in_tail && a > head.size()) break;
    for (std::size_t b = 0; b < probe.size(); ++b) {
      if (a == b) continue;
      if (!(probe[a] * probe[b]).is_zero() || !(probe[b] * probe[a]).is_zero()) {
        rep.orthogonal = false;
        why << "members " << a << " and " << b << " are not orthogonal; ";
        break;
      }
    }
  }

  if (complete) {
    auto s = f.sum();
    rep.complete = s && *s == EndoElement::identity(f.module_ptr());
    if (!rep.complete) why << "members do not sum to 1; ";
  }
  rep.detail = why.str();
  return rep;
}

void IdempotentFamily::require_valid() const {
  const FamilyReport rep = validate();
  if (!rep.idempotent || !rep.orthogonal || !rep.zero_convergent || (complete && !rep.complete)) {
    throw ValidationError("invalid idempotent family: " + rep.detail);
  }
}

}  // namespace semiperfect
