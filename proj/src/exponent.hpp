#ifndef PIALG_EXPONENT_HPP
#define PIALG_EXPONENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "decompose.hpp"
#include "structure.hpp"

namespace pialg {

/// result of a PI-exponent computation
struct ExponentReport {
  int d = 0;
  /// maximizing component index sequence, in product order
  std::vector<int> witness;
  std::vector<int> witness_dims;
  /// the invariant-simple components, embedded in the ambient algebra
  std::vector<Subspace> components_used;
  /// false when some component is simple over the base field only, so the
  /// value matches the closed-field statement after a scalar extension
  bool certified = true;
  std::string note;
};

/// an ideal chain (I_k, J_k) for the Lie exponent formula; the verifier
/// fills in the complements T_k and bracket depths q_k it used
struct LieChain {
  std::vector<Subspace> upper;  ///< I_k
  std::vector<Subspace> lower;  ///< J_k with J_k inside I_k
  std::vector<Subspace> complements;
  std::vector<int> depths;
  bool verified = false;
  /// irreducibility of every section certified over all extensions
  bool absolutely = true;
  int value = 0;  ///< dim L - dim of the annihilator intersection
  std::string note;
};

struct LieExponentReport {
  ExponentReport report;
  /// annotated copies of the supplied chains, default chain (L, radical)
  /// appended last
  std::vector<LieChain> chains;
  int best_chain = -1;
};

/// d of the codimension asymptotics: the largest total dimension of
/// invariant-simple components of the invariant radical complement that are
/// linked into a nonzero product through the radical; component indices in
/// the product are pairwise distinct (the defining direct sum forces this)
/// and every ordering of a subset is tried
ExponentReport associative_exponent(const Algebra& a, const Structure& s);

/// verifies each supplied chain (irreducible sections, invariant module
/// complements, nonzero iterated brackets up to q_max, default dim L) and
/// maximizes dim L - dim of the annihilator intersection over the verified
/// ones; the default chain (L, radical) is always attempted as well
LieExponentReport lie_exponent_from_chains(const Algebra& l,
                                           const Structure& s,
                                           const std::vector<LieChain>& chains,
                                           int q_max = -1);

struct SimplicityReport {
  bool simple = false;
  /// false when irreducibility could not be decided over the base field
  bool conclusive = true;
  /// certified to stay simple under every scalar extension
  bool absolutely = false;
  /// proper nonzero invariant ideal, set when simple is conclusively false
  Subspace certificate;
  long needed_extension_degree = 0;
  std::string note;
};

/// true iff A has nonzero multiplication and no proper nonzero ideal
/// invariant under the structure; tested as irreducibility of A over the
/// operator algebra of multiplications and structure operators
SimplicityReport is_invariant_simple(const Algebra& a, const Structure& s);

struct CriterionReport {
  ExponentReport exponent;
  SimplicityReport simplicity;
  /// exponent with the structure forgotten; set for derivation actions
  /// whose acting Lie algebra is semisimple
  std::optional<ExponentReport> trivial_exponent;
  std::string note;
};

/// cross-validates exponent = dim A against invariant simplicity, and for
/// semisimple derivation actions the equality with the ordinary exponent;
/// a conclusive mismatch raises InternalError, by design a bug detector
CriterionReport simplicity_criterion_report(
    const Algebra& a, const Structure& s,
    const std::vector<LieChain>& chains = {});

}  // namespace pialg

#endif
