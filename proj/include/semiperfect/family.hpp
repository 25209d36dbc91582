#pragma once

// Indexed families of endomorphisms: a finite head list, optionally followed
// by a countable translation tail over omega modules. Tail member k is
// constant + templ.shifted(base + k) with templ finitary.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semiperfect/endo.hpp"

namespace semiperfect {

struct TranslationTail {
  PatternMatrix constant;
  PatternMatrix templ;
  std::size_t base = 0;
};

class EndoFamily {
 public:
  EndoFamily() = default;
  EndoFamily(ModulePtr module, std::vector<EndoElement> head, std::optional<TranslationTail> tail = std::nullopt);

  const ModulePtr& module_ptr() const { return module_; }
  const std::vector<EndoElement>& head() const { return head_; }
  const std::optional<TranslationTail>& tail() const { return tail_; }
  bool is_finite() const { return !tail_.has_value(); }
  /// Number of members; nullopt for countable families.
  std::optional<std::size_t> size() const;
  /// Head members first, then tail members.
  EndoElement member(std::size_t k) const;

  /// Sum of all members when it exists in the finite topology (tail constant
  /// zero); otherwise nullopt.
  std::optional<EndoElement> sum() const;

  std::string to_string() const;

 private:
  ModulePtr module_;
  std::vector<EndoElement> head_;
  std::optional<TranslationTail> tail_;
};

/// Zero-convergence in the finite topology, decided from the description:
/// finite families always converge, tails iff their constant vanishes.
bool is_zero_convergent(const EndoFamily& family);
/// Checks only the given neighborhoods: for each E only finitely many
/// members may have a nonzero row in E.
bool is_zero_convergent(const EndoFamily& family, const std::vector<OpenIdealDescriptor>& basis);

struct FamilyReport {
  bool idempotent = false;
  bool orthogonal = false;
  bool zero_convergent = false;
  bool complete = false;
  std::string detail;
};

struct IdempotentFamily {
  EndoFamily members;
  bool complete = false;

  /// Exact check of every invariant (complete is checked only when claimed).
  FamilyReport validate() const;
  /// Throws ValidationError when validate() reports a violated invariant.
  void require_valid() const;
};

}  // namespace semiperfect
