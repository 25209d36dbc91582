#include "semiperfect/covers.hpp"

#include "semiperfect/errors.hpp"
#include "semiperfect/idempotents.hpp"

namespace semiperfect {

namespace {

EndoElement act(const EndoElement& e, const EndoElement& x, Side side) {
  return side == Side::kRight ? e * x : x * e;
}

// Vector of F_p^(n * D) with `block` in position i.
FpVector embed(std::size_t n, std::size_t i, const FpVector& block) {
  const std::size_t d = block.size();
  FpVector v(n * d, 0);
  std::copy(block.begin(), block.end(), v.begin() + static_cast<std::ptrdiff_t>(i * d));
  return v;
}

FpVector concat(const EndoBasis& basis, const std::vector<EndoElement>& parts) {
  FpVector v;
  v.reserve(parts.size() * basis.dimension());
  for (const auto& x : parts) {
    const FpVector c = basis.coordinates(x);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

void insert_relations(FpSpan& span, const EndoBasis& basis, const FgDiscreteModule& m) {
  for (const auto& rel : m.relations) {
    for (std::size_t k = 0; k < basis.dimension(); ++k) {
      std::vector<EndoElement> parts;
      for (const auto& r : rel) parts.push_back(act(r, basis.basis_element(k), m.side));
      span.insert(concat(basis, parts));
    }
  }
}

// Inserts the image of e r (or e h) in block slot i of an n-block space.
std::size_t insert_block(FpSpan& span, std::size_t n, std::size_t i, const FpSpan& block) {
  std::size_t grew = 0;
  for (const auto& v : block.basis()) grew += span.insert(embed(n, i, v)) ? 1 : 0;
  return grew;
}

std::size_t top_dimension_of(const EndoBasis& basis, const EndoElement& e, Side side) {
  return principal_projective(basis, e, side).rank() - principal_radical(basis, e, side).rank();
}

void require_truncated(const FgDiscreteModule& m) {
  if (!m.module || m.module->is_omega()) throw BackendUnsupported("covers: truncated backend only");
}

}  // namespace

FpSpan principal_projective(const EndoBasis& basis, const EndoElement& e, Side side) {
  FpSpan span(basis.prime(), basis.dimension());
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    span.insert(basis.coordinates(act(e, basis.basis_element(k), side)));
  }
  return span;
}

FpSpan principal_radical(const EndoBasis& basis, const EndoElement& e, Side side) {
  FpSpan span(basis.prime(), basis.dimension());
  for (std::size_t k : basis.radical_indices()) {
    span.insert(basis.coordinates(act(e, basis.basis_element(k), side)));
  }
  return span;
}

void FgDiscreteModule::validate() const {
  require_truncated(*this);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!(generators[i].module() == *module)) throw ValidationError("FgDiscreteModule: generator over another module");
    if (classify_idempotent(generators[i]) != IdempotentKind::kLocalIdempotent) {
      throw ValidationError("FgDiscreteModule: generator " + std::to_string(i) + " is not a local idempotent");
    }
  }
  for (std::size_t r = 0; r < relations.size(); ++r) {
    if (relations[r].size() != generators.size()) {
      throw ValidationError("FgDiscreteModule: relation " + std::to_string(r) + " has the wrong length");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const EndoElement& x = relations[r][i];
      if (!(x.module() == *module) || !(act(generators[i], x, side) == x)) {
        throw ValidationError("FgDiscreteModule: relation " + std::to_string(r) + " component " +
                              std::to_string(i) + " is outside its generator's summand");
      }
    }
  }
}

RadicalResult radical_of_fg_discrete(const FgDiscreteModule& m) {
  m.validate();
  const EndoBasis basis(m.module);
  const std::size_t n = m.generators.size();
  const std::size_t dim = n * basis.dimension();
  const Coeff p = basis.prime();

  RadicalResult out{FpSpan(p, dim), FpSpan(p, dim), FpSpan(p, dim), {}, {}, 0, false};
  insert_relations(out.relations, basis, m);
  insert_relations(out.module_space, basis, m);
  insert_relations(out.radical, basis, m);
  for (std::size_t i = 0; i < n; ++i) {
    insert_block(out.module_space, n, i, principal_projective(basis, m.generators[i], m.side));
    insert_block(out.radical, n, i, principal_radical(basis, m.generators[i], m.side));
  }
  out.top_dimension = out.module_space.rank() - out.radical.rank();

  // A simple top either dies in M / M h or embeds, so a greedy pass finds a
  // set of generators whose tops form a direct sum decomposition.
  FpSpan acc = out.radical;
  bool exact = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t grew = insert_block(acc, n, i, principal_projective(basis, m.generators[i], m.side));
    if (grew == 0) continue;
    if (grew != top_dimension_of(basis, m.generators[i], m.side)) exact = false;
    out.simple_generators.push_back(i);
    out.simple_residues.push_back(project_to_semisimple(m.generators[i]));
  }
  out.semisimple_top = exact && acc.rank() == out.module_space.rank();
  return out;
}

std::vector<std::vector<EndoElement>> CoverResult::cover_map(std::size_t generator_count) const {
  std::vector<std::vector<EndoElement>> map;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    std::vector<EndoElement> row;
    for (std::size_t i = 0; i < generator_count; ++i) {
      row.push_back(source_generator[k] == i ? sources[k] : EndoElement::zero(sources[k].module_ptr()));
    }
    map.push_back(std::move(row));
  }
  return map;
}

CoverResult projective_cover_fg(const FgDiscreteModule& m) {
  const RadicalResult rad = radical_of_fg_discrete(m);
  const EndoBasis basis(m.module);
  const std::size_t n = m.generators.size();
  const std::size_t d = basis.dimension();
  const Coeff p = basis.prime();

  CoverResult out;
  out.side = m.side;
  out.target_top_dimension = rad.top_dimension;
  FpSpan source(p, n * d);
  FpSpan source_radical(p, n * d);
  for (std::size_t i : rad.simple_generators) {
    out.sources.push_back(m.generators[i]);
    out.source_generator.push_back(i);
    insert_block(source, n, i, principal_projective(basis, m.generators[i], m.side));
    insert_block(source_radical, n, i, principal_radical(basis, m.generators[i], m.side));
  }
  out.source_top_dimension = source.rank() - source_radical.rank();

  FpSpan image = rad.relations;
  for (const auto& v : source.basis()) image.insert(v);
  out.surjective = image.rank() == rad.module_space.rank();

  // Zassenhaus: rows (s | s) for s in P and (r | 0) for r in the relations;
  // echelon rows with vanishing left half span P meet relations.
  FpSpan zass(p, 2 * n * d);
  for (const auto& v : source.basis()) {
    FpVector w(v);
    w.insert(w.end(), v.begin(), v.end());
    zass.insert(w);
  }
  for (const auto& v : rad.relations.basis()) {
    FpVector w(v);
    w.resize(2 * n * d, 0);
    zass.insert(w);
  }
  out.kernel_in_radical = true;
  for (const auto& w : zass.basis()) {
    bool left_zero = true;
    for (std::size_t k = 0; k < n * d && left_zero; ++k) left_zero = w[k] == 0;
    if (!left_zero) continue;
    const FpVector v(w.begin() + static_cast<std::ptrdiff_t>(n * d), w.end());
    if (!source_radical.contains(v)) out.kernel_in_radical = false;
    std::vector<EndoElement> tuple;
    for (std::size_t i : out.source_generator) {
      tuple.push_back(basis.element(FpVector(v.begin() + static_cast<std::ptrdiff_t>(i * d),
                                             v.begin() + static_cast<std::ptrdiff_t>((i + 1) * d))));
    }
    out.kernel.push_back(std::move(tuple));
  }
  out.residue_isomorphism = out.surjective && rad.semisimple_top && out.source_top_dimension == rad.top_dimension;
  return out;
}

CoverResult projective_cover_fg_contramodule(const FgDiscreteModule& m) {
  FgDiscreteModule left = m;
  left.side = Side::kLeft;
  return projective_cover_fg(left);
}

SimpleCover projective_cover_simple(ModulePtr module, const SemisimpleElement& g, Side side) {
  const auto r = g.rank();
  if (!g.is_idempotent() || !r || *r != 1) {
    throw NotPrimitiveResidue("projective_cover_simple: residue is not a primitive idempotent");
  }
  EndoElement e = hensel_lift_idempotent(section_lift(g)).idempotent;
  const EndoBasis basis(module);
  FgDiscreteModule simple{module, {e}, {}, side};
  for (std::size_t k : basis.radical_indices()) {
    EndoElement x = act(e, basis.basis_element(k), side);
    if (!x.is_zero()) simple.relations.push_back({std::move(x)});
  }
  CoverResult cover = projective_cover_fg(simple);
  return SimpleCover{std::move(e), std::move(simple), std::move(cover)};
}

}  // namespace semiperfect
