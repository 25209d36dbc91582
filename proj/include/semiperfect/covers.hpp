#pragma once

// Finitely generated discrete modules over the truncated backend, presented as
// (+)_i e_i r / <relations> (right side) or (+)_i r e_i / <relations> (left
// side). Every such module is a finite F_p-vector space; submodules are
// handled as subspaces of the ambient space r^n.

#include <cstddef>
#include <vector>

#include "semiperfect/endo.hpp"
#include "semiperfect/fp_linalg.hpp"
#include "semiperfect/linearize.hpp"
#include "semiperfect/semisimple.hpp"

namespace semiperfect {

struct FgDiscreteModule {
  ModulePtr module;
  std::vector<EndoElement> generators;  // local idempotents e_i
  /// Each relation is a tuple (r_i) with r_i in e_i r (right) or r e_i (left).
  std::vector<std::vector<EndoElement>> relations;
  Side side = Side::kRight;

  /// Checks that generators are local idempotents and relation components lie
  /// in the right places. Throws ValidationError.
  void validate() const;
};

struct RadicalResult {
  FpSpan module_space;    // image of (+) e_i r, together with the relations
  FpSpan radical;         // M h + relations
  FpSpan relations;
  /// Generators whose simple tops e_i r / e_i h make up M / M h.
  std::vector<std::size_t> simple_generators;
  std::vector<SemisimpleElement> simple_residues;
  std::size_t top_dimension = 0;  // dim_F_p M / M h
  bool semisimple_top = false;    // the simple tops add up to M / M h
};

/// M h, with the decomposition of the top M / M h into simples.
RadicalResult radical_of_fg_discrete(const FgDiscreteModule& m);

struct CoverResult {
  Side side = Side::kRight;
  std::vector<EndoElement> sources;                 // local idempotents of the source P
  std::vector<std::size_t> source_generator;        // source k maps identically onto generator source_generator[k]
  /// F_p basis of ker(P -> M) as tuples over the sources; each lies in P h.
  std::vector<std::vector<EndoElement>> kernel;
  bool surjective = false;
  bool kernel_in_radical = false;
  bool residue_isomorphism = false;
  std::size_t source_top_dimension = 0;
  std::size_t target_top_dimension = 0;

  bool certified() const { return surjective && kernel_in_radical && residue_isomorphism; }
  /// Block matrix of the cover map: entry (k, i) is e_k when source k hits generator i.
  std::vector<std::vector<EndoElement>> cover_map(std::size_t generator_count) const;
};

CoverResult projective_cover_fg(const FgDiscreteModule& m);
/// The same computation on left modules r e_i.
CoverResult projective_cover_fg_contramodule(const FgDiscreteModule& m);

struct SimpleCover {
  EndoElement idempotent;     // e with e + h = g
  FgDiscreteModule simple;    // e r / e h (or r e / h e)
  CoverResult cover;
};

/// Cover e r -> e r / e h of the simple module g S.
SimpleCover projective_cover_simple(ModulePtr module, const SemisimpleElement& g, Side side = Side::kRight);

/// e r as an F_p subspace of r (r e on the left side).
FpSpan principal_projective(const EndoBasis& basis, const EndoElement& e, Side side);
/// e h (h e on the left side).
FpSpan principal_radical(const EndoBasis& basis, const EndoElement& e, Side side);

}  // namespace semiperfect
