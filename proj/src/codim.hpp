#ifndef PIALG_CODIM_HPP
#define PIALG_CODIM_HPP

#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "structure.hpp"

namespace pialg {

enum class CodimRegime { Ordinary, Graded, Group, Operator };

const char* codim_regime_name(CodimRegime r);

/// one multilinear word: position p holds variable order[p] acted on by
/// the operator decorations[p] (-1 leaves the variable plain). Words in a
/// Lie algebra are read as left-normed brackets.
struct DecoratedMonomial {
  std::vector<int> order;
  std::vector<int> decorations;
};

/// sum of scalar multiples of decorated monomials in x_0..x_{n-1}; each
/// monomial uses every variable exactly once. Decorations index ops.
/// var_labels, when nonempty, pins variable i to substitutions from the
/// grading component with label var_labels[i].
struct MultilinearPolynomial {
  int n = 0;
  std::vector<std::pair<Scalar, DecoratedMonomial>> terms;
  std::vector<Matrix> ops;
  std::vector<GradeLabel> var_labels;
};

/// per-label-vector elimination block of a graded codimension
struct LabelBlock {
  std::vector<GradeLabel> labels;
  long rows = 0;
  long cols = 0;
  long rank = 0;
};

struct CodimReport {
  int n = 0;
  CodimRegime regime = CodimRegime::Ordinary;
  long value = 0;
  /// totals across blocks; columns are (substitution tuple, output
  /// coordinate) pairs, tuples in mixed radix with variable 0 most
  /// significant
  long rows = 0;
  long cols = 0;
  std::vector<LabelBlock> blocks;
  std::vector<std::string> operator_labels;
  std::string note;
};

/// n-th codimension of the identities the structure respects: the rank of
/// the pairing between the spanning decorated monomials and all
/// (label-respecting) basis substitutions
CodimReport codim(const Algebra& a, const Structure& s, int n);

/// graded codimension computed through the dual character action; agrees
/// with codim(a, grading, n) whenever the base field admits the dual
/// characters
CodimReport codim_via_dual_action(const Algebra& a, const Grading& g, int n);

struct IdentityReport {
  bool holds = true;
  /// failure data: per-variable index into that variable's substitution
  /// domain, the substituted vectors, and the nonzero value
  std::vector<int> witness;
  std::vector<Vec> witness_vectors;
  Vec value;
};

/// does f vanish under every admissible basis substitution
IdentityReport is_identity(const Algebra& a, const Structure& s,
                           const MultilinearPolynomial& f);

struct CodimSeries {
  std::vector<CodimReport> entries;
  /// exponent from the structure-aware formulas, -1 when no value is
  /// certified for this input
  int predicted_exponent = -1;
  std::string exponent_note;
};

CodimSeries codim_series(const Algebra& a, const Structure& s, int n_max);

/// canonical row space of one elimination block, kept with the data needed
/// to act on its columns: permuting variables permutes substitution tuples
struct EvalSpace {
  /// ambient = (product of domain sizes) * dim A
  Subspace space;
  std::vector<long> domain_sizes;
  /// graded regime: support component index per variable; empty otherwise
  std::vector<int> labels;
};

/// evaluation row spaces of every elimination block (one per label vector
/// in the graded regime, a single entry otherwise); the codimension is the
/// sum of their dimensions
std::vector<EvalSpace> codim_row_spaces(const Algebra& a, const Structure& s,
                                        int n);

/// rows*cols guard applied to each codimension computation, overridable
/// through the CODIM_BUDGET environment variable
long codim_budget();

}  // namespace pialg

#endif
