#ifndef PIALG_COCHAR_HPP
#define PIALG_COCHAR_HPP

#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "codim.hpp"
#include "structure.hpp"

namespace pialg {

/// partition of n: weakly decreasing positive parts
struct Partition {
  std::vector<int> parts;

  int sum() const;
  int rows() const { return int(parts.size()); }
  std::string str() const;
  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
};

/// all partitions of n, largest part first, ending at (1^n)
std::vector<Partition> partitions_of(int n);

/// dimension of the irreducible S_n representation, by hook lengths
long hook_dimension(const Partition& lam);

/// size of the conjugacy class with this cycle type
long class_size(const Partition& mu);

/// irreducible character value chi_lambda at cycle type mu, by the
/// Murnaghan-Nakayama border-strip recursion
long mn_character(const Partition& lam, const Partition& mu);

/// canonical representative of a cycle type: increasing cycle lengths
/// acting on consecutive index blocks; perm[i] is the image of i
std::vector<int> cycle_type_representative(const Partition& mu, int n);

/// trace of the variable permutation perm on the evaluation quotient
Scalar quotient_trace(const Algebra& a, const Structure& s, int n,
                      const std::vector<int>& perm);

using ClassCharacter = std::vector<std::pair<Partition, Scalar>>;

/// trace of one canonical representative per cycle type on the quotient of
/// the decorated multilinear polynomials by the identities
ClassCharacter quotient_character(const Algebra& a, const Structure& s,
                                  int n);

/// multiplicities m(lambda) of the irreducibles in a class function, via
/// the class-size-weighted inner product; every multiplicity is checked to
/// be a nonnegative integer
std::vector<std::pair<Partition, long>> irreducible_multiplicities(
    const ClassCharacter& chi, int n);

struct CocharacterReport {
  int n = 0;
  ClassCharacter class_character;
  std::vector<std::pair<Partition, long>> multiplicities;
  /// sum of multiplicity * hook dimension; checked against the trace at
  /// the identity, which is the codimension
  long codimension = 0;
};

CocharacterReport cocharacter(const Algebra& a, const Structure& s, int n);

struct VanishingReport {
  int n = 0;
  /// least p with I^p = 0
  int nilpotency_index = 0;
  /// partitions are constrained from this 1-based row on
  int tail_start = 0;
  /// partitions forced to multiplicity zero; each is asserted to vanish
  std::vector<Partition> triggered;
  std::vector<Partition> unconstrained;
  CocharacterReport character;
};

/// checks the nilpotent-ideal vanishing rule: whenever the triggered row
/// sum reaches the nilpotency index, the multiplicity must be zero.
/// A nonzero triggered multiplicity is an engine bug and raises
/// InternalError.
VanishingReport cocharacter_vanishing_check(const Algebra& a,
                                            const Structure& s,
                                            const Subspace& ideal, int n);

/// cap on cocharacter arity, default 7, overridable through the
/// COCHAR_MAX_N environment variable
int cocharacter_max_n();

}  // namespace pialg

#endif
