#ifndef PIALG_DECOMPOSE_HPP
#define PIALG_DECOMPOSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "structure.hpp"

namespace pialg {

struct SimplePiece {
  Subspace space;
  int centroid_dim = 1;
  /// true when the piece provably stays a single simple ideal over any
  /// scalar extension (centroid of dimension one)
  bool certified_simple = false;
  /// for uncertified pieces: the piece may split over an extension of at
  /// most this degree (or along idempotents the eigenvalue hunt missed)
  long split_degree_hint = 0;
  std::string note;
};

struct SimpleDecomposition {
  std::vector<SimplePiece> pieces;
  bool complete = false;  // every piece certified simple
  std::string method;
};

/// splits a semisimple algebra into ideals by eigenvalue splitting of its
/// multiplier centroid; requires a semisimple input
SimpleDecomposition simple_ideal_decomposition(const Algebra& a);

struct InvariantComponent {
  Subspace space;
  std::vector<int> piece_indices;
  /// minimality is certified only when every constituent piece was
  bool certified_minimal = false;
};

struct InvariantDecomposition {
  SimpleDecomposition underlying;
  std::vector<InvariantComponent> components;
  bool complete = false;
};

/// minimal structure-invariant ideals of a semisimple algebra: simple
/// pieces closed under the structure operators and re-idealization, then
/// merged
InvariantDecomposition invariant_simple_decomposition(const Algebra& a,
                                                      const Structure& s);

struct SplittingReport {
  Subspace radical;
  /// invariant semisimple complement: Wedderburn factor or Levi subalgebra
  Subspace complement;
  int stages = 0;
  std::string method;
};

/// structure-invariant Wedderburn-Malcev complement (associative) or Levi
/// subalgebra (Lie). For group actions and gradings existence is a theorem
/// and failure raises InternalError; a derivation action can genuinely
/// admit no invariant complement, which raises ValidationError instead.
SplittingReport invariant_splitting(const Algebra& a, const Structure& s);

/// complement of inner in outer stable under every listed operator, found
/// through an equivariant projection; nullopt when none exists
std::optional<Subspace> invariant_complement(const Algebra& a,
                                             const std::vector<Matrix>& ops,
                                             const Subspace& inner,
                                             const Subspace& outer);

}  // namespace pialg

#endif
