#ifndef PIALG_MODREP_HPP
#define PIALG_MODREP_HPP

#include <string>
#include <vector>

#include "matrix.hpp"

namespace pialg {

/// basis of the unital associative envelope of the given operators inside
/// End(F^d); the identity always comes first
std::vector<Matrix> unital_matrix_envelope(const FieldData* f, int d,
                                           const std::vector<Matrix>& gens);

/// basis of {c : c m = m c for every operator m}
std::vector<Matrix> matrix_commutant_basis(const FieldData* f, int d,
                                           const std::vector<Matrix>& ops);

struct IrreducibilityReport {
  enum class Status { Irreducible, Reducible, Inconclusive };
  Status status = Status::Inconclusive;
  /// set only when Irreducible was certified to survive scalar extension
  bool absolutely_irreducible = false;
  /// nonzero proper invariant subspace; certificate for Reducible
  Subspace proper_submodule;
  int envelope_dim = 0;
  int commutant_dim = 0;
  /// Inconclusive only: extending scalars by at most this degree exposes an
  /// eigenvalue of a commutant element, which decides the question
  long candidate_extension_degree = 0;
  std::string note;
};

/// decides whether F^d is an irreducible module over the algebra generated
/// by the operators. Reducible answers carry a verified certificate; when
/// eigenvalue hunting in the commutant stalls without a decision the report
/// honestly says Inconclusive.
IrreducibilityReport module_irreducible(const FieldData* f, int d,
                                        const std::vector<Matrix>& ops);

}  // namespace pialg

#endif
