#ifndef PIALG_STRUCTURE_HPP
#define PIALG_STRUCTURE_HPP

#include <string>
#include <variant>
#include <vector>

#include "algebra.hpp"

namespace pialg {

/// label in Z^a x Z_{m_1} x ... x Z_{m_b}; the first free_rank entries are
/// the free part, the rest are residues
struct GradeLabel {
  std::vector<long> v;
  bool operator==(const GradeLabel& o) const { return v == o.v; }
};

struct GradingGroup {
  int free_rank = 0;
  std::vector<long> torsion;

  std::size_t label_len() const { return free_rank + torsion.size(); }
  GradeLabel canon(GradeLabel g) const;
  GradeLabel add(const GradeLabel& a, const GradeLabel& b) const;
  GradeLabel zero() const;
  std::string str(const GradeLabel& g) const;
};

struct Grading {
  GradingGroup group;
  std::vector<GradeLabel> labels;
  std::vector<Subspace> components;
  /// projections onto each component along the others; filled by validation
  std::vector<Matrix> projections;

  /// index of the component carrying this label, or -1
  int component_of(const GradeLabel& g) const;
};

struct GroupElem {
  Matrix mat;
  bool anti = false;
  std::string name;
};

struct GroupAction {
  std::vector<GroupElem> generators;
  /// full multiplicative closure including the identity; filled by validation
  std::vector<GroupElem> elements;
};

struct DerivationAction {
  std::vector<Matrix> generators;
  std::vector<std::string> names;
};

struct TrivialStructure {};

using Structure =
    std::variant<TrivialStructure, Grading, GroupAction, DerivationAction>;

const char* structure_kind_name(const Structure& s);

/// validates the structure against the algebra and fills derived data
/// (grading projections, group closure). Group closure larger than
/// max_group_order raises BudgetError.
ValidationReport validate_structure(const Algebra& a, Structure& s,
                                    std::size_t max_group_order = 1024);

/// the linear operators a subspace must be stable under for invariance
std::vector<Matrix> structure_operators(const Algebra& a, const Structure& s);

bool subspace_invariant(const Algebra& a, const Structure& s,
                        const Subspace& u);

/// basis of the span of the structure's operators inside End(A):
/// group elements, grading projections, or the unital associative envelope
/// of the derivations; the trivial structure yields just the identity
struct OperatorEnvelope {
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  bool includes_identity = false;
};

OperatorEnvelope operator_envelope(const Algebra& a, const Structure& s);

/// the action of the character group dual to a grading: each character chi
/// acts by sum_g chi(g) pi_g. Requires the support labels to generate a
/// finite group whose exponent divides the order of the roots of unity in
/// the base field (conductor m gives m-th roots, 2m-th for odd m).
GroupAction dual_action_from_grading(const Algebra& a, const Grading& g);

/// transports a structure onto a materialized subalgebra whose space is
/// invariant; throws ValidationError when it is not
Structure restrict_structure(const Algebra& a, const Structure& s,
                             const SubAlgebra& sub);

/// pushes a structure down to the quotient by an invariant ideal
Structure quotient_structure(const Algebra& a, const Structure& s,
                             const QuotientAlgebra& q);

}  // namespace pialg

#endif
