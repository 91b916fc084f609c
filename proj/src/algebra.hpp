#ifndef PIALG_ALGEBRA_HPP
#define PIALG_ALGEBRA_HPP

#include <string>
#include <vector>

#include "matrix.hpp"

namespace pialg {

enum class AlgebraKind { Associative, Lie };

/// finite-dimensional algebra given by structure constants over a cyclotomic
/// field; table is indexed as table[(i*dim + j)*dim + k] = coefficient of
/// e_k in e_i * e_j
struct Algebra {
  const FieldData* field = nullptr;
  AlgebraKind kind = AlgebraKind::Associative;
  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  std::vector<Scalar> table;

  const Scalar& sc(std::size_t i, std::size_t j, std::size_t k) const {
    return table[(i * dim + j) * dim + k];
  }
  Scalar& sc(std::size_t i, std::size_t j, std::size_t k) {
    return table[(i * dim + j) * dim + k];
  }

  /// product of basis elements e_i * e_j as a coordinate vector
  Vec basis_product(std::size_t i, std::size_t j) const;
  Vec mul(const Vec& x, const Vec& y) const;
  /// commutator for associative algebras, the product itself for Lie ones
  Vec bracket(const Vec& x, const Vec& y) const;

  /// matrix of v -> x*v in the basis
  Matrix left_mult(const Vec& x) const;
  /// matrix of v -> v*x
  Matrix right_mult(const Vec& x) const;
  /// matrix of v -> bracket(x, v)
  Matrix ad(const Vec& x) const;

  Subspace full_space() const { return Subspace::full(field, dim); }
  Vec unit_vec(std::size_t i) const { return vec_unit(field, dim, i); }
};

Algebra make_algebra(const FieldData* field, AlgebraKind kind,
                     std::vector<std::string> basis_names,
                     std::vector<Scalar> table);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  void fail(std::string msg);
};

/// checks the axioms on all basis triples: associativity, or alternation
/// plus the Jacobi identity
ValidationReport validate_algebra(const Algebra& a);

/// span of all products u*w, u in U, w in W
Subspace subspace_product(const Algebra& a, const Subspace& u,
                          const Subspace& w);

/// span of all brackets [u, w]
Subspace subspace_bracket(const Algebra& a, const Subspace& u,
                          const Subspace& w);

struct RadicalReport {
  Subspace radical;
  /// associative: least p with J^p = 0; Lie: least p such that the p-th
  /// term of the derived series of the solvable radical (starting at the
  /// radical itself) vanishes; p = 1 when the radical is zero
  std::size_t nilpotency_index = 1;
  std::string method;
};

/// Jacobson radical of an associative algebra, or the solvable radical of a
/// Lie algebra, with runtime certification of the defining properties
RadicalReport radical_report(const Algebra& a);
Subspace radical(const Algebra& a);

/// largest nilpotent ideal of a Lie algebra; certified nilpotent ideal
/// containing [L, rad L]
Subspace nilradical(const Algebra& a);

Subspace center(const Algebra& a);

/// two-sided annihilator {x : x*A = A*x = 0}
Subspace annihilator(const Algebra& a);

/// {x in L : [x, I] <= J}; for associative algebras brackets are commutators
Subspace ann_module(const Algebra& a, const Subspace& i_space,
                    const Subspace& j_space);

struct QuotientAlgebra {
  Algebra alg;
  /// dim(A/I) x dim(A); sends a vector of A to its quotient coordinates
  Matrix proj;
  /// dim(A) x dim(A/I); coset representatives of the quotient basis
  Matrix sect;
  Subspace ideal;
};

QuotientAlgebra quotient_algebra(const Algebra& a, const Subspace& ideal);

struct SubAlgebra {
  Algebra alg;
  /// dim(A) x dim(U); columns are the representing vectors of the basis
  Matrix incl;
  Subspace space;
};

/// materializes a multiplicatively closed subspace as an algebra in its own
/// basis; throws InternalError if the subspace is not closed
SubAlgebra subalgebra_on(const Algebra& a, const Subspace& u);

/// pushes a subspace given in subalgebra coordinates back into the ambient
/// algebra
Subspace embed_subspace(const SubAlgebra& sub, const Subspace& s);

/// least p with U^p = 0 under iterated products U, U*U, U*(U*U), ...;
/// returns 0 if the chain does not reach zero (i.e. U is not nilpotent)
std::size_t nilpotency_index(const Algebra& a, const Subspace& u);

/// derived series length: least p with D_p = 0 where D_1 = U,
/// D_{k+1} = D_k * D_k; returns 0 if U is not solvable
std::size_t solvability_index(const Algebra& a, const Subspace& u);

}  // namespace pialg

#endif
