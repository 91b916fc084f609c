#ifndef PIALG_FPOLY_HPP
#define PIALG_FPOLY_HPP

#include <vector>

#include "matrix.hpp"

namespace pialg {

/// Univariate polynomial over the scalar field, coefficients low to high,
/// no trailing zeros (zero polynomial is the empty vector).
using FPoly = std::vector<Scalar>;

FPoly fpoly_trim(FPoly p);
int fpoly_degree(const FPoly& p);  // -1 for zero
FPoly fpoly_make_monic(FPoly p);
FPoly fpoly_add(const FPoly& a, const FPoly& b);
FPoly fpoly_sub(const FPoly& a, const FPoly& b);
FPoly fpoly_mul(const FPoly& a, const FPoly& b);
std::pair<FPoly, FPoly> fpoly_divmod(FPoly num, const FPoly& den);
FPoly fpoly_gcd(FPoly a, FPoly b);  // monic gcd
FPoly fpoly_derivative(const FPoly& p);
Scalar fpoly_eval(const FPoly& p, const Scalar& x);
/// p with the multiplicities squeezed out: p / gcd(p, p')
FPoly fpoly_squarefree_part(const FPoly& p);
/// divide out (x - root); remainder must vanish
FPoly fpoly_deflate(const FPoly& p, const Scalar& root);

/// minimal polynomial of a square matrix, monic
FPoly minimal_polynomial(const Matrix& t);

struct RootSearch {
  std::vector<Scalar> roots;  // distinct roots found in the field
  FPoly residual;             // rootless factor left over (monic), may be 1
  bool complete;              // true when residual has provably no F-roots
                              //   (guaranteed for conductor 1)
};

/// Roots of p in Q(zeta_m). Complete for the rational field via the
/// rational root theorem; for higher conductors additionally tries
/// candidates r*zeta^j, so a residual factor may still have hidden roots
/// (complete=false signals that).
RootSearch roots_in_field(const FPoly& p);

}  // namespace pialg

#endif
