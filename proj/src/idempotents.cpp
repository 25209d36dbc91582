#include "semiperfect/idempotents.hpp"

#include <algorithm>
#include <sstream>

#include "semiperfect/linearize.hpp"
#include "semiperfect/semisimple.hpp"

namespace semiperfect {

namespace {

unsigned ceil_log2(unsigned n) {
  unsigned k = 0;
  while ((1u << k) < n) ++k;
  return k;
}

void require_truncated(const EndoElement& x, const char* op) {
  if (!x.is_finite()) throw BackendUnsupported(std::string(op) + ": truncated backend only");
}

bool residue_primitive(const SemisimpleElement& g) {
  const auto r = g.rank();
  return g.is_idempotent() && r && *r == 1;
}

// Members worth testing one by one: the head and the first few tail members.
std::vector<EndoElement> probe_members(const EndoFamily& family) {
  std::vector<EndoElement> out(family.head().begin(), family.head().end());
  if (family.tail()) {
    std::size_t width = 2;
    for (const auto& s : family.tail()->templ.sparse_entries()) width = std::max({width, s.row + 2, s.col + 2});
    for (std::size_t k = 0; k < width; ++k) out.push_back(family.member(family.head().size() + k));
  }
  return out;
}

}  // namespace

const char* to_string(IdempotentKind kind) {
  switch (kind) {
    case IdempotentKind::kNotIdempotent:
      return "NotIdempotent";
    case IdempotentKind::kIdempotent:
      return "Idempotent";
    case IdempotentKind::kLocalIdempotent:
      return "LocalIdempotent";
  }
  return "?";
}

IdempotentKind classify_idempotent(const EndoElement& e) {
  if (!(e * e == e)) return IdempotentKind::kNotIdempotent;
  if (e.is_zero()) return IdempotentKind::kIdempotent;
  const auto r = project_to_semisimple(e).rank();
  return r && *r == 1 ? IdempotentKind::kLocalIdempotent : IdempotentKind::kIdempotent;
}

HenselResult hensel_lift_idempotent(const EndoElement& seed) {
  require_truncated(seed, "hensel_lift_idempotent");
  if (!project_to_semisimple(seed).is_idempotent()) {
    throw ResidueNotIdempotent("hensel_lift_idempotent: residue of the seed is not idempotent");
  }
  const std::size_t bound = ceil_log2(seed.ring().precision) + 1;
  HenselResult out{seed, {}, 0};
  EndoElement& e = out.idempotent;
  for (;;) {
    const EndoElement sq = e * e;
    const EndoElement defect = sq - e;
    if (defect.is_zero()) break;
    const unsigned deg = filtration_degree(defect);
    if (!out.defect_degrees.empty() && deg < 2 * out.defect_degrees.back()) {
      throw NoConvergence("hensel_lift_idempotent: defect degree did not double");
    }
    out.defect_degrees.push_back(deg);
    if (out.iterations == bound) throw NoConvergence("hensel_lift_idempotent: step bound exceeded");
    e = sq.scaled(3) - (sq * e).scaled(2);
    ++out.iterations;
  }
  return out;
}

LiftResult lift_primitive_family(const std::vector<EndoElement>& targets) {
  if (targets.empty()) return LiftResult{IdempotentFamily{}, {}};
  const ModulePtr module = targets.front().module_ptr();
  for (const auto& f : targets) require_truncated(f, "lift_primitive_family");
  const std::size_t n = targets.size();

  std::vector<SemisimpleElement> residues;
  for (std::size_t w = 0; w < n; ++w) {
    residues.push_back(project_to_semisimple(targets[w]));
    if (!residue_primitive(residues.back())) {
      throw NotPrimitiveResidue("lift_primitive_family: residue of target " + std::to_string(w) +
                                " is not a primitive idempotent");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      if (v != w && !(residues[v] * residues[w]).is_zero()) {
        throw NotOrthogonalResidues("lift_primitive_family: residues " + std::to_string(v) + " and " +
                                    std::to_string(w) + " are not orthogonal");
      }
    }
  }

  std::vector<EndoElement> eps;
  for (const auto& f : targets) eps.push_back(hensel_lift_idempotent(f).idempotent);

  // e'_w = sum over paths w = u_0, u_1, ..., u_k (consecutive indices distinct)
  // of (-1)^k eps_{u_0} ... eps_{u_k}: the projector onto eps_w r along the
  // complement cut out by the other eps_v. Path products of length k are
  // products of k elements of h, so the sum stops before 2N terms.
  const std::size_t bound = 2 * static_cast<std::size_t>(module->ring().precision) + 2;
  const EndoElement zero = EndoElement::zero(module);
  std::vector<EndoElement> lifted;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<EndoElement> paths(n, zero);
    paths[w] = eps[w];
    EndoElement e = eps[w];
    for (std::size_t k = 0;; ++k) {
      if (k > bound) throw NoConvergence("lift_primitive_family: path sum did not terminate");
      std::vector<EndoElement> next(n, zero);
      bool any = false;
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
          if (u != v && !paths[u].is_zero()) next[v] = next[v] - paths[u] * eps[v];
        }
        if (!next[v].is_zero()) {
          any = true;
          e = e + next[v];
        }
      }
      if (!any) break;
      paths = std::move(next);
    }
    lifted.push_back(std::move(e));
  }

  const EndoBasis basis(module);
  LiftResult out;
  for (std::size_t w = 0; w < n; ++w) {
    if (!(project_to_semisimple(lifted[w]) == residues[w])) {
      throw std::logic_error("lift_primitive_family: lifted residue differs");
    }
    auto x = solve_linear(basis, targets[w], lifted[w], Side::kRight);
    if (!x) throw std::logic_error("lift_primitive_family: membership in f'_w r failed");
    out.witnesses.push_back(std::move(*x));
  }
  EndoFamily members(module, lifted);
  auto s = members.sum();
  out.family = IdempotentFamily{std::move(members), s && *s == EndoElement::identity(module)};
  out.family.require_valid();
  return out;
}

IdempotentFamily orthogonalize_finite_family(const std::vector<EndoElement>& family) {
  if (family.empty()) return IdempotentFamily{};
  return orthogonalize_finite_family(EndoFamily(family.front().module_ptr(), family));
}

IdempotentFamily orthogonalize_finite_family(const EndoFamily& family) {
  const ModulePtr module = family.module_ptr();
  if (!module) return IdempotentFamily{};
  const auto probe = probe_members(family);
  for (std::size_t a = 0; a < probe.size(); ++a) {
    if (classify_idempotent(probe[a]) != IdempotentKind::kLocalIdempotent) {
      throw ValidationError("orthogonalize_finite_family: member " + std::to_string(a) +
                            " is not a local idempotent");
    }
    for (std::size_t b = 0; b < probe.size(); ++b) {
      if (a != b && !jacobson_membership(probe[a] * probe[b])) {
        throw NotOrthogonalResidues("orthogonalize_finite_family: product of members " + std::to_string(a) +
                                    " and " + std::to_string(b) + " is not in h");
      }
    }
  }

  const EndoElement one = EndoElement::identity(module);
  const auto total = family.sum();
  IdempotentFamily as_is{family, total && *total == one};
  const FamilyReport rep = as_is.validate();
  if (rep.idempotent && rep.orthogonal && rep.zero_convergent) return as_is;

  const bool complete_mod_h =
      total && project_to_semisimple(*total) == SemisimpleElement::identity(module);
  if (complete_mod_h) {
    const InvertibilityDecision d = decide_invertible(*total);
    if (const auto* no = std::get_if<NotInvertible>(&d)) {
      throw NonInvertibleSum("orthogonalize_finite_family: the members sum to a non-invertible element (" +
                                 no->certificate.reason + ")",
                             no->certificate);
    }
  }
  if (!family.is_finite() || module->is_omega()) {
    throw BackendUnsupported("orthogonalize_finite_family: pattern families are not orthogonalized");
  }

  // Lift each member inside the corner left free by the members built so far.
  EndoElement s = EndoElement::zero(module);
  std::vector<EndoElement> out;
  for (const auto& e : family.head()) {
    const EndoElement c = one - s;
    EndoElement lifted = hensel_lift_idempotent(c * e * c).idempotent;
    s = s + lifted;
    out.push_back(std::move(lifted));
  }
  IdempotentFamily result{EndoFamily(module, out), complete_mod_h};
  for (std::size_t w = 0; w < out.size(); ++w) {
    if (!(project_to_semisimple(out[w]) == project_to_semisimple(family.head()[w]))) {
      throw std::logic_error("orthogonalize_finite_family: residue changed");
    }
  }
  result.require_valid();
  return result;
}

std::vector<OpenIdealDescriptor> canonical_chain(const DecomposedModule& module, std::size_t length) {
  const std::size_t n = module.is_omega() ? length : module.size();
  std::vector<OpenIdealDescriptor> chain;
  for (std::size_t k = 0; k < n; ++k) chain.push_back(OpenIdealDescriptor::prefix(k));
  return chain;
}

namespace {

SplitResult split_pattern(const EndoElement& e, const std::vector<OpenIdealDescriptor>& chain) {
  const PatternMatrix& m = e.pattern();
  const RingDescriptor ring = m.ring();
  for (const auto& [d, v] : m.steady()) {
    if (d != 0 || !v.is_one()) throw BackendUnsupported("split_idempotent: only diagonal 0/1 patterns");
  }
  std::vector<EndoElement> head;
  for (std::size_t r = 0; r < m.head_rows().size(); ++r) {
    for (const auto& [c, v] : m.head_rows()[r]) {
      if (c != r || !v.is_one()) throw BackendUnsupported("split_idempotent: only diagonal 0/1 patterns");
      head.push_back(EndoElement::from_pattern(e.module_ptr(), PatternMatrix::sparse(ring, {{r, r, v}})));
    }
  }
  std::optional<TranslationTail> tail;
  if (!m.steady().empty()) {
    tail = TranslationTail{PatternMatrix::zero(ring), PatternMatrix::sparse(ring, {{0, 0, AdicScalar::one(ring)}}),
                           m.threshold()};
  }
  SplitResult out;
  out.family = IdempotentFamily{EndoFamily(e.module_ptr(), std::move(head), std::move(tail)),
                                e == EndoElement::identity(e.module_ptr())};
  for (const auto& ideal : chain) {
    std::size_t top = 0;
    for (std::size_t j : ideal.generators) top = std::max(top, j + 1);
    std::vector<std::size_t> peeled(top);
    for (std::size_t j = 0; j < top; ++j) peeled[j] = j;
    EndoElement rest = e - e * summand_projector(e.module_ptr(), peeled);
    if (!vanishes_on(rest, ideal)) throw std::logic_error("split_idempotent: remainder outside I_k");
    out.remainders.push_back(std::move(rest));
  }
  out.family.require_valid();
  if (!(*out.family.members.sum() == e)) throw std::logic_error("split_idempotent: members do not sum to e");
  return out;
}

}  // namespace

SplitResult split_idempotent(const EndoElement& e, const std::vector<OpenIdealDescriptor>& chain) {
  if (!(e * e == e)) throw ValidationError("split_idempotent: input is not idempotent");
  if (!e.is_finite()) return split_pattern(e, chain);

  const ModulePtr module = e.module_ptr();
  EndoElement f = e;
  std::vector<EndoElement> members;
  auto peel = [&] {
    const auto parts = project_to_semisimple(f).primitive_decomposition();
    if (parts.empty()) throw std::logic_error("split_idempotent: nonzero idempotent with zero residue");
    const EndoElement target = f * section_lift(parts.front()) * f;
    EndoElement next = lift_primitive_family({target}).family.members.member(0);
    f = f - next;
    members.push_back(std::move(next));
  };

  SplitResult out;
  for (const auto& ideal : chain) {
    while (!vanishes_on(f, ideal)) peel();
    out.remainders.push_back(f);
  }
  while (!f.is_zero()) peel();

  out.family = IdempotentFamily{EndoFamily(module, members), e == EndoElement::identity(module)};
  out.family.require_valid();
  if (!(*out.family.members.sum() == e)) throw std::logic_error("split_idempotent: members do not sum to e");
  for (const auto& x : members) {
    if (classify_idempotent(x) != IdempotentKind::kLocalIdempotent) {
      throw std::logic_error("split_idempotent: member is not local");
    }
  }
  return out;
}

IdempotentFamily certify_semiperfect(ModulePtr module) {
  IdempotentFamily fam;
  fam.complete = true;
  if (module->is_omega()) {
    const RingDescriptor ring = module->ring();
    fam.members = EndoFamily(
        module, {},
        TranslationTail{PatternMatrix::zero(ring), PatternMatrix::sparse(ring, {{0, 0, AdicScalar::one(ring)}}), 0});
  } else {
    std::vector<EndoElement> projectors;
    for (std::size_t i = 0; i < module->size(); ++i) projectors.push_back(summand_projector(module, {i}));
    fam.members = EndoFamily(module, std::move(projectors));
  }
  fam.require_valid();
  return fam;
}

ModulePtr quotient_module(const DecomposedModule& module, unsigned target_precision) {
  if (module.is_omega()) throw BackendUnsupported("quotient_module: truncated backend only");
  const RingDescriptor ring = module.ring();
  if (target_precision < 1 || target_precision >= ring.precision) {
    throw ValidationError("quotient_module: target precision must satisfy 1 <= M < N");
  }
  std::vector<LocalModule> summands;
  for (const auto& s : module.summands()) summands.push_back(LocalModule::torsion(std::min(s.exponent, target_precision)));
  return std::make_shared<const DecomposedModule>(
      DecomposedModule::finite(RingDescriptor::truncated(ring.prime, target_precision), std::move(summands)));
}

IdempotentFamily push_family_through_quotient(const IdempotentFamily& family, unsigned target_precision) {
  const EndoFamily& members = family.members;
  if (!members.is_finite() || !members.module_ptr() || members.module_ptr()->is_omega()) {
    throw BackendUnsupported("push_family_through_quotient: truncated backend only");
  }
  const ModulePtr coarser = quotient_module(*members.module_ptr(), target_precision);
  std::vector<EndoElement> images;
  for (const auto& x : members.head()) {
    EndoElement y = x.reduce_precision(coarser);
    if (!y.is_zero()) images.push_back(std::move(y));
  }
  IdempotentFamily out{EndoFamily(coarser, std::move(images)), family.complete};
  out.require_valid();
  return out;
}

}  // namespace semiperfect
