#include "algebra.hpp"

#include <sstream>

#include "errors.hpp"

namespace pialg {

Vec Algebra::basis_product(std::size_t i, std::size_t j) const {
  Vec out(dim, Scalar::zero(field));
  for (std::size_t k = 0; k < dim; ++k) out[k] = sc(i, j, k);
  return out;
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  Vec out(dim, Scalar::zero(field));
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (std::size_t k = 0; k < dim; ++k) {
        const Scalar& t = sc(i, j, k);
        if (!t.is_zero()) out[k] = out[k] + c * t;
      }
    }
  }
  return out;
}

Vec Algebra::bracket(const Vec& x, const Vec& y) const {
  if (kind == AlgebraKind::Lie) return mul(x, y);
  return vec_sub(mul(x, y), mul(y, x));
}

Matrix Algebra::left_mult(const Vec& x) const {
  const int n = int(dim);
  Matrix m(field, n, n);
  for (int j = 0; j < n; ++j) m.set_col(j, mul(x, unit_vec(j)));
  return m;
}

Matrix Algebra::right_mult(const Vec& x) const {
  const int n = int(dim);
  Matrix m(field, n, n);
  for (int j = 0; j < n; ++j) m.set_col(j, mul(unit_vec(j), x));
  return m;
}

Matrix Algebra::ad(const Vec& x) const {
  if (kind == AlgebraKind::Lie) return left_mult(x);
  return left_mult(x) - right_mult(x);
}

Algebra make_algebra(const FieldData* field, AlgebraKind kind,
                     std::vector<std::string> basis_names,
                     std::vector<Scalar> table) {
  Algebra a;
  a.field = field;
  a.kind = kind;
  a.dim = basis_names.size();
  a.basis_names = std::move(basis_names);
  if (table.size() != a.dim * a.dim * a.dim)
    throw ValidationError("structure constant table has wrong size");
  a.table = std::move(table);
  return a;
}

void ValidationReport::fail(std::string msg) {
  ok = false;
  if (problems.size() < 32) problems.push_back(std::move(msg));
}

ValidationReport validate_algebra(const Algebra& a) {
  ValidationReport rep;
  const std::size_t n = a.dim;
  if (a.table.size() != n * n * n) {
    rep.fail("table size mismatch");
    return rep;
  }
  for (const Scalar& s : a.table)
    if (s.field_data() != a.field) {
      rep.fail("table entry from a different field");
      return rep;
    }
  if (a.kind == AlgebraKind::Associative) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec ij = a.basis_product(i, j);
        for (std::size_t k = 0; k < n; ++k) {
          Vec lhs = a.mul(ij, a.unit_vec(k));
          Vec rhs = a.mul(a.unit_vec(i), a.basis_product(j, k));
          if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "associativity fails on basis triple (" << i << "," << j
               << "," << k << ")";
            rep.fail(os.str());
          }
        }
      }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (!vec_is_zero(a.basis_product(i, i))) {
        std::ostringstream os;
        os << "[e_" << i << ", e_" << i << "] != 0";
        rep.fail(os.str());
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec s = vec_add(a.basis_product(i, j), a.basis_product(j, i));
        if (!vec_is_zero(s)) {
          std::ostringstream os;
          os << "bracket is not antisymmetric on (" << i << "," << j << ")";
          rep.fail(os.str());
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec s = a.mul(a.basis_product(i, j), a.unit_vec(k));
          s = vec_add(s, a.mul(a.basis_product(j, k), a.unit_vec(i)));
          s = vec_add(s, a.mul(a.basis_product(k, i), a.unit_vec(j)));
          if (!vec_is_zero(s)) {
            std::ostringstream os;
            os << "Jacobi identity fails on (" << i << "," << j << "," << k
               << ")";
            rep.fail(os.str());
          }
        }
  }
  return rep;
}

Subspace subspace_product(const Algebra& a, const Subspace& u,
                          const Subspace& w) {
  EchelonBasis eb(a.field, int(a.dim));
  for (const Vec& x : u.basis())
    for (const Vec& y : w.basis()) eb.insert(a.mul(x, y));
  return eb.to_subspace();
}

Subspace subspace_bracket(const Algebra& a, const Subspace& u,
                          const Subspace& w) {
  EchelonBasis eb(a.field, int(a.dim));
  for (const Vec& x : u.basis())
    for (const Vec& y : w.basis()) eb.insert(a.bracket(x, y));
  return eb.to_subspace();
}

std::size_t nilpotency_index(const Algebra& a, const Subspace& u) {
  Subspace power = u;
  for (std::size_t p = 1; p <= a.dim + 1; ++p) {
    if (power.dim() == 0) return p;
    power = subspace_product(a, u, power);
  }
  return 0;
}

std::size_t solvability_index(const Algebra& a, const Subspace& u) {
  Subspace term = u;
  for (std::size_t p = 1; p <= a.dim + 1; ++p) {
    if (term.dim() == 0) return p;
    term = subspace_product(a, term, term);
  }
  return 0;
}

namespace {

Scalar trace_product(const Matrix& x, const Matrix& y) {
  Scalar t = Scalar::zero(x.field_data());
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c) t = t + x.at(r, c) * y.at(c, r);
  return t;
}

/// Gram matrix of the trace form (x, y) -> tr(L_x L_y) on basis pairs
Matrix assoc_trace_gram(const Algebra& a) {
  const int n = int(a.dim);
  std::vector<Matrix> lm;
  lm.reserve(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    lm.push_back(a.left_mult(a.unit_vec(i)));
  Matrix g(a.field, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Scalar t = trace_product(lm[i], lm[j]);
      g.at(i, j) = t;
      g.at(j, i) = t;
    }
  return g;
}

Subspace assoc_radical(const Algebra& a) {
  // char-0 trace criterion: x lies in the radical iff tr(L_x L_y) = 0 for
  // all y; valid without a unit since L is multiplicative either way
  return kernel(assoc_trace_gram(a));
}

Subspace lie_radical(const Algebra& a) {
  // Killing-orthogonal complement of the derived subalgebra
  std::vector<Matrix> ads;
  ads.reserve(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) ads.push_back(a.ad(a.unit_vec(i)));
  Subspace derived = subspace_product(a, a.full_space(), a.full_space());
  if (derived.dim() == 0) return a.full_space();
  Matrix cond(a.field, derived.dim(), int(a.dim));
  for (int r = 0; r < derived.dim(); ++r) {
    const Vec& c = derived.basis()[r];
    Matrix ad_c(a.field, int(a.dim), int(a.dim));
    for (std::size_t i = 0; i < a.dim; ++i)
      if (!c[i].is_zero()) ad_c = ad_c + ads[i].scaled(c[i]);
    for (std::size_t j = 0; j < a.dim; ++j)
      cond.at(r, int(j)) = trace_product(ad_c, ads[j]);
  }
  return kernel(cond);
}

void require(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace

RadicalReport radical_report(const Algebra& a) {
  RadicalReport rep;
  Subspace full = a.full_space();
  if (a.kind == AlgebraKind::Associative) {
    rep.method = "kernel of the left-multiplication trace form";
    rep.radical = assoc_radical(a);
    require(rep.radical.contains(subspace_product(a, full, rep.radical)),
            "radical is not a left ideal");
    require(rep.radical.contains(subspace_product(a, rep.radical, full)),
            "radical is not a right ideal");
    rep.nilpotency_index = nilpotency_index(a, rep.radical);
    require(rep.nilpotency_index != 0, "radical is not nilpotent");
    if (rep.radical.dim() > 0) {
      QuotientAlgebra q = quotient_algebra(a, rep.radical);
      require(assoc_radical(q.alg).dim() == 0,
              "quotient by the radical is not semisimple");
    }
  } else {
    rep.method = "Killing-orthogonal complement of the derived subalgebra";
    rep.radical = lie_radical(a);
    require(rep.radical.contains(subspace_product(a, full, rep.radical)),
            "solvable radical is not an ideal");
    rep.nilpotency_index = solvability_index(a, rep.radical);
    require(rep.nilpotency_index != 0, "radical is not solvable");
    if (rep.radical.dim() > 0 && rep.radical.dim() < int(a.dim)) {
      QuotientAlgebra q = quotient_algebra(a, rep.radical);
      require(lie_radical(q.alg).dim() == 0,
              "quotient by the solvable radical is not semisimple");
    }
  }
  return rep;
}

Subspace radical(const Algebra& a) { return radical_report(a).radical; }

Subspace nilradical(const Algebra& a) {
  if (a.kind != AlgebraKind::Lie)
    throw ValidationError("nilradical is defined here for Lie algebras only");
  Subspace r = radical(a);
  if (r.dim() == 0) return r;
  const int n = int(a.dim);
  // associative envelope (without identity) of ad(rad L) inside End(L)
  std::vector<Matrix> gens;
  for (const Vec& v : r.basis()) gens.push_back(a.ad(v));
  EchelonBasis env(a.field, n * n);
  std::vector<Matrix> frontier;
  for (const Matrix& g : gens)
    if (env.insert(g.flatten())) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const Matrix& w : frontier)
      for (const Matrix& g : gens) {
        Matrix p = g * w;
        if (env.insert(p.flatten())) next.push_back(p);
      }
    frontier = std::move(next);
  }
  Subspace env_space = env.to_subspace();
  // inside the radical, nilpotency of ad x is equivalent to the vanishing
  // of tr(ad x * b) for every b in the envelope (common triangularization
  // of a solvable family, then a Vandermonde separation of the weights)
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < a.dim; ++i) ads.push_back(a.ad(a.unit_vec(i)));
  Matrix cond(a.field, env_space.dim(), n);
  for (int rr = 0; rr < env_space.dim(); ++rr) {
    Matrix b = Matrix::unflatten(a.field, n, n, env_space.basis()[rr]);
    for (int j = 0; j < n; ++j) cond.at(rr, j) = trace_product(ads[j], b);
  }
  Subspace nil = kernel(cond).intersect(r);
  require(nil.contains(subspace_product(a, a.full_space(), nil)),
          "nilradical candidate is not an ideal");
  Subspace term = nil;
  std::size_t steps = 0;
  while (term.dim() > 0) {
    term = subspace_product(a, nil, term);
    require(++steps <= a.dim + 1, "nilradical candidate is not nilpotent");
  }
  require(nil.contains(subspace_bracket(a, a.full_space(), r)),
          "nilradical must contain [L, rad L]");
  return nil;
}

Subspace center(const Algebra& a) {
  const int n = int(a.dim);
  if (n == 0) return Subspace::zero(a.field, 0);
  Matrix cond(a.field, n * n, n);
  for (int j = 0; j < n; ++j) {
    Vec ej = a.unit_vec(j);
    // rows expressing bracket(x, e_j) = 0 as conditions on x
    Matrix block = a.right_mult(ej);
    if (a.kind == AlgebraKind::Associative) block = block - a.left_mult(ej);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) cond.at(j * n + r, c) = block.at(r, c);
  }
  return kernel(cond);
}

Subspace annihilator(const Algebra& a) {
  const int n = int(a.dim);
  Matrix cond(a.field, 2 * n * n, n);
  for (int j = 0; j < n; ++j) {
    Vec ej = a.unit_vec(j);
    Matrix rm = a.right_mult(ej);  // x -> x * e_j
    Matrix lm = a.left_mult(ej);   // x -> e_j * x
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        cond.at(j * n + r, c) = rm.at(r, c);
        cond.at((n + j) * n + r, c) = lm.at(r, c);
      }
  }
  return kernel(cond);
}

Subspace ann_module(const Algebra& a, const Subspace& i_space,
                    const Subspace& j_space) {
  if (i_space.dim() == 0) return a.full_space();
  const int n = int(a.dim);
  QuotientAlgebra q = quotient_algebra(a, j_space);
  const int qd = q.proj.rows();
  Matrix cond(a.field, i_space.dim() * qd, n);
  for (int b = 0; b < i_space.dim(); ++b) {
    // x -> [x, v_b] followed by the projection mod J
    Matrix m(a.field, n, n);
    for (int c = 0; c < n; ++c)
      m.set_col(c, a.bracket(a.unit_vec(c), i_space.basis()[b]));
    Matrix pm = q.proj * m;
    for (int r = 0; r < qd; ++r)
      for (int c = 0; c < n; ++c) cond.at(b * qd + r, c) = pm.at(r, c);
  }
  return kernel(cond);
}

QuotientAlgebra quotient_algebra(const Algebra& a, const Subspace& ideal) {
  QuotientAlgebra out;
  out.ideal = ideal;
  const int n = int(a.dim);
  const int id = ideal.dim();
  const int q = n - id;
  Subspace comp = ideal.coordinate_complement();
  // change of basis: rows are the ideal basis then the representatives
  Matrix t(a.field, n, n);
  for (int r = 0; r < id; ++r) t.set_row(r, ideal.basis()[r]);
  for (int r = 0; r < q; ++r) t.set_row(id + r, comp.basis()[r]);
  auto tinv = inverse(t.transpose());
  if (!tinv) throw InternalError("quotient basis change is singular");
  out.proj = Matrix(a.field, q, n);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < n; ++c) out.proj.at(r, c) = tinv->at(id + r, c);
  out.sect = Matrix(a.field, n, q);
  for (int c = 0; c < q; ++c) out.sect.set_col(c, comp.basis()[c]);

  Algebra quot;
  quot.field = a.field;
  quot.kind = a.kind;
  quot.dim = std::size_t(q);
  for (int i = 0; i < q; ++i)
    quot.basis_names.push_back("q" + std::to_string(i));
  quot.table.assign(std::size_t(q) * q * q, Scalar::zero(a.field));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      Vec img = out.proj.apply(a.mul(comp.basis()[i], comp.basis()[j]));
      for (int k = 0; k < q; ++k) quot.sc(i, j, k) = img[k];
    }
  out.alg = std::move(quot);
  return out;
}

SubAlgebra subalgebra_on(const Algebra& a, const Subspace& u) {
  SubAlgebra out;
  out.space = u;
  const int n = int(a.dim);
  const int d = u.dim();
  out.incl = Matrix(a.field, n, d);
  for (int c = 0; c < d; ++c) out.incl.set_col(c, u.basis()[c]);
  Algebra sub;
  sub.field = a.field;
  sub.kind = a.kind;
  sub.dim = std::size_t(d);
  for (int i = 0; i < d; ++i) sub.basis_names.push_back("u" + std::to_string(i));
  sub.table.assign(std::size_t(d) * d * d, Scalar::zero(a.field));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec prod = a.mul(u.basis()[i], u.basis()[j]);
      auto coords = u.coordinates(prod);
      if (!coords)
        throw InternalError("subspace is not closed under the product");
      for (int k = 0; k < d; ++k) sub.sc(i, j, k) = (*coords)[k];
    }
  out.alg = std::move(sub);
  return out;
}

Subspace embed_subspace(const SubAlgebra& sub, const Subspace& s) {
  EchelonBasis eb(sub.alg.field, sub.incl.rows());
  for (const Vec& v : s.basis()) eb.insert(sub.incl.apply(v));
  return eb.to_subspace();
}

}  // namespace pialg
