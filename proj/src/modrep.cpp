#include "modrep.hpp"

#include <algorithm>

#include "errors.hpp"
#include "fpoly.hpp"

namespace pialg {

std::vector<Matrix> unital_matrix_envelope(const FieldData* f, int d,
                                           const std::vector<Matrix>& gens) {
  std::vector<Matrix> basis;
  EchelonBasis eb(f, d * d);
  Matrix id = Matrix::identity(f, d);
  eb.insert(id.flatten());
  basis.push_back(id);
  std::vector<Matrix> frontier;
  for (const Matrix& g : gens)
    if (eb.insert(g.flatten())) {
      basis.push_back(g);
      frontier.push_back(g);
    }
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const Matrix& w : frontier)
      for (const Matrix& g : gens) {
        Matrix p = g * w;
        if (eb.insert(p.flatten())) {
          basis.push_back(p);
          next.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  return basis;
}

std::vector<Matrix> matrix_commutant_basis(const FieldData* f, int d,
                                           const std::vector<Matrix>& ops) {
  // rows of the condition matrix encode (m c - c m) entry (r, s) as a
  // linear functional of the d*d unknowns c_(p,q)
  Matrix cond(f, int(ops.size()) * d * d, d * d);
  int row = 0;
  for (const Matrix& m : ops) {
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) {
        for (int k = 0; k < d; ++k) {
          // + m(r,k) c(k,s)
          cond.at(row, k * d + s) = cond.at(row, k * d + s) + m.at(r, k);
          // - c(r,k) m(k,s)
          cond.at(row, r * d + k) = cond.at(row, r * d + k) - m.at(k, s);
        }
        ++row;
      }
  }
  Subspace sol = kernel(cond);
  std::vector<Matrix> out;
  for (const Vec& v : sol.basis()) out.push_back(Matrix::unflatten(f, d, d, v));
  return out;
}

namespace {

Scalar trace_of_product(const Matrix& x, const Matrix& y) {
  Scalar t = Scalar::zero(x.field_data());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) t = t + x.at(r, c) * y.at(c, r);
  return t;
}

bool is_scalar_matrix(const Matrix& m) {
  Matrix diff = m - Matrix::identity(m.field_data(), m.rows()).scaled(
                        m.at(0, 0));
  return diff.is_zero();
}

Subspace operator_image(const FieldData* f, int d,
                        const std::vector<Matrix>& mats) {
  EchelonBasis eb(f, d);
  for (const Matrix& m : mats)
    for (int j = 0; j < d; ++j) eb.insert(m.col(j));
  return eb.to_subspace();
}

void verify_certificate(const FieldData* f, int d,
                        const std::vector<Matrix>& ops, const Subspace& u) {
  if (u.dim() == 0 || u.dim() >= d)
    throw InternalError("reducibility certificate is not proper");
  for (const Matrix& m : ops)
    for (const Vec& v : u.basis())
      if (!u.contains(m.apply(v)))
        throw InternalError("reducibility certificate is not invariant");
  (void)f;
}

}  // namespace

IrreducibilityReport module_irreducible(const FieldData* f, int d,
                                        const std::vector<Matrix>& ops) {
  if (d <= 0) throw ValidationError("module must have positive dimension");
  IrreducibilityReport rep;
  if (d == 1) {
    rep.status = IrreducibilityReport::Status::Irreducible;
    rep.absolutely_irreducible = true;
    rep.envelope_dim = 1;
    rep.commutant_dim = 1;
    rep.note = "one-dimensional module";
    return rep;
  }
  std::vector<Matrix> env = unital_matrix_envelope(f, d, ops);
  rep.envelope_dim = int(env.size());
  if (rep.envelope_dim == d * d) {
    rep.status = IrreducibilityReport::Status::Irreducible;
    rep.absolutely_irreducible = true;
    rep.commutant_dim = 1;
    rep.note = "the envelope is the full endomorphism algebra";
    return rep;
  }

  // radical of the envelope: kernel of the W-trace form on the envelope
  // (exact for a unital subalgebra of End(W) in characteristic zero)
  const int ed = rep.envelope_dim;
  Matrix gram(f, ed, ed);
  for (int i = 0; i < ed; ++i)
    for (int j = i; j < ed; ++j) {
      Scalar t = trace_of_product(env[i], env[j]);
      gram.at(i, j) = t;
      gram.at(j, i) = t;
    }
  Subspace rad = kernel(gram);
  if (rad.dim() > 0) {
    std::vector<Matrix> rad_mats;
    for (const Vec& coords : rad.basis()) {
      Matrix m(f, d, d);
      for (int i = 0; i < ed; ++i)
        if (!coords[i].is_zero()) m = m + env[i].scaled(coords[i]);
      rad_mats.push_back(std::move(m));
    }
    rep.proper_submodule = operator_image(f, d, rad_mats);
    verify_certificate(f, d, ops, rep.proper_submodule);
    rep.status = IrreducibilityReport::Status::Reducible;
    rep.commutant_dim = int(matrix_commutant_basis(f, d, ops).size());
    rep.note = "the radical of the envelope maps onto a proper submodule";
    return rep;
  }

  std::vector<Matrix> comm = matrix_commutant_basis(f, d, ops);
  rep.commutant_dim = int(comm.size());
  if (rep.commutant_dim == 1) {
    // scalars only; with a semisimple envelope this survives any extension
    rep.status = IrreducibilityReport::Status::Irreducible;
    rep.absolutely_irreducible = true;
    rep.note = "semisimple envelope with scalar commutant";
    return rep;
  }

  // hunt for singular elements of the commutant: an eigenvalue of a
  // non-scalar element splits off ker(c - lambda) as a proper submodule
  std::vector<Matrix> candidates;
  for (const Matrix& c : comm) candidates.push_back(c);
  for (std::size_t i = 0; i < comm.size() && candidates.size() < 64; ++i)
    for (std::size_t j = i + 1; j < comm.size() && candidates.size() < 64;
         ++j) {
      candidates.push_back(comm[i] + comm[j]);
      candidates.push_back(comm[i] - comm[j]);
    }
  long best_degree = 0;
  bool all_complete = true;
  long nonscalar_candidates = 0;
  for (const Matrix& c : candidates) {
    if (is_scalar_matrix(c)) continue;
    ++nonscalar_candidates;
    FPoly mp = minimal_polynomial(c);
    RootSearch rs = roots_in_field(mp);
    if (!rs.roots.empty()) {
      const Scalar& lambda = rs.roots.front();
      Matrix shifted = c - Matrix::identity(f, d).scaled(lambda);
      rep.proper_submodule = kernel(shifted);
      verify_certificate(f, d, ops, rep.proper_submodule);
      rep.status = IrreducibilityReport::Status::Reducible;
      rep.note = "kernel of a singular commutant element";
      return rep;
    }
    all_complete = all_complete && rs.complete;
    long rdeg = long(fpoly_degree(rs.residual));
    if (rdeg >= 2 && (best_degree == 0 || rdeg < best_degree))
      best_degree = rdeg;
  }

  // a two- or three-dimensional commutant generated by one element with a
  // provably irreducible minimal polynomial is a field, so the module is
  // irreducible over F (but splits after that extension)
  if (rep.commutant_dim >= 2 && rep.commutant_dim <= 3) {
    for (const Matrix& c : comm) {
      if (is_scalar_matrix(c)) continue;
      FPoly mp = minimal_polynomial(c);
      long deg = long(fpoly_degree(mp));
      if (deg != rep.commutant_dim) continue;  // c does not generate
      RootSearch rs = roots_in_field(mp);
      if (rs.roots.empty() && rs.complete && (deg == 2 || deg == 3)) {
        rep.status = IrreducibilityReport::Status::Irreducible;
        rep.absolutely_irreducible = false;
        rep.candidate_extension_degree = deg;
        rep.note = "the commutant is a field of degree " +
                   std::to_string(deg) + " over the base";
        return rep;
      }
    }
  }

  rep.status = IrreducibilityReport::Status::Inconclusive;
  rep.candidate_extension_degree = best_degree;
  rep.note =
      nonscalar_candidates == 0
          ? "commutant probe produced no usable elements"
          : (all_complete
                 ? "no eigenvalues over the base field; a scalar extension "
                   "of the reported degree would decide"
                 : "eigenvalue search over a cyclotomic base field is "
                   "heuristic here; undetected eigenvalues may exist");
  return rep;
}

}  // namespace pialg
