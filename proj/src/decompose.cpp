#include "decompose.hpp"

#include <functional>
#include <numeric>

#include "errors.hpp"
#include "fpoly.hpp"
#include "modrep.hpp"

namespace pialg {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

bool is_scalar_mat(const Matrix& m) {
  Matrix diff =
      m - Matrix::identity(m.field_data(), m.rows()).scaled(m.at(0, 0));
  return diff.is_zero();
}

/// left and right multiplications (associative) or adjoints (Lie)
std::vector<Matrix> multiplier_ops(const Algebra& a) {
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < a.dim; ++i)
    ops.push_back(a.left_mult(a.unit_vec(i)));
  if (a.kind == AlgebraKind::Associative)
    for (std::size_t i = 0; i < a.dim; ++i)
      ops.push_back(a.right_mult(a.unit_vec(i)));
  return ops;
}

/// matrix of m restricted to an m-invariant subspace, in its echelon basis
Matrix restrict_to(const Matrix& m, const Subspace& p) {
  const int d = p.dim();
  Matrix out(p.field_data(), d, d);
  for (int c = 0; c < d; ++c) {
    auto coords = p.coordinates(m.apply(p.basis()[c]));
    if (!coords)
      throw InternalError("operator does not preserve the subspace");
    out.set_col(c, *coords);
  }
  return out;
}

Vec from_coords(const Subspace& p, const Vec& coords) {
  Vec out = vec_zero(p.field_data(), p.ambient_dim());
  for (int c = 0; c < p.dim(); ++c)
    out = vec_add(out, vec_scale(coords[c], p.basis()[c]));
  return out;
}

Subspace embed_coords(const Subspace& p, const Subspace& inner) {
  EchelonBasis eb(p.field_data(), p.ambient_dim());
  for (const Vec& v : inner.basis()) eb.insert(from_coords(p, v));
  return eb.to_subspace();
}

Matrix poly_at_matrix(const FPoly& f, const Matrix& m) {
  const int n = m.rows();
  Matrix out(m.field_data(), n, n);
  for (int k = fpoly_degree(f); k >= 0; --k) {
    out = out * m;
    out = out + Matrix::identity(m.field_data(), n).scaled(f[std::size_t(k)]);
  }
  return out;
}

}  // namespace

SimpleDecomposition simple_ideal_decomposition(const Algebra& a) {
  if (radical_report(a).radical.dim() != 0)
    throw ValidationError(
        "simple ideal decomposition requires a semisimple algebra");
  SimpleDecomposition out;
  out.method = a.kind == AlgebraKind::Associative
                   ? "eigenvalue splitting of the multiplier centroid"
                   : "eigenvalue splitting of the centroid";
  const int n = int(a.dim);
  if (n == 0) {
    out.complete = true;
    return out;
  }
  std::vector<Matrix> gamma =
      matrix_commutant_basis(a.field, n, multiplier_ops(a));
  std::vector<Matrix> cands = gamma;
  for (std::size_t i = 0; i < gamma.size() && cands.size() < 64; ++i)
    for (std::size_t j = i + 1; j < gamma.size() && cands.size() < 64; ++j) {
      cands.push_back(gamma[i] + gamma[j]);
      cands.push_back(gamma[i] - gamma[j]);
    }

  std::vector<Subspace> pieces = {a.full_space()};
  for (const Matrix& c : cands) {
    if (is_scalar_mat(c)) continue;
    std::vector<Subspace> next;
    for (const Subspace& p : pieces) {
      if (p.dim() <= 1) {
        next.push_back(p);
        continue;
      }
      Matrix cp = restrict_to(c, p);
      RootSearch rs = roots_in_field(minimal_polynomial(cp));
      if (rs.roots.empty()) {
        next.push_back(p);
        continue;
      }
      int acc = 0;
      for (const Scalar& lambda : rs.roots) {
        Matrix shifted =
            cp - Matrix::identity(a.field, p.dim()).scaled(lambda);
        Subspace k = kernel(shifted);
        require(k.dim() > 0, "eigenvalue without eigenvector");
        next.push_back(embed_coords(p, k));
        acc += k.dim();
      }
      if (fpoly_degree(rs.residual) >= 1) {
        Subspace k = kernel(poly_at_matrix(rs.residual, cp));
        if (k.dim() > 0) {
          next.push_back(embed_coords(p, k));
          acc += k.dim();
        }
      }
      require(acc == p.dim(), "eigen splitting lost dimensions");
    }
    pieces = std::move(next);
  }

  Subspace total = Subspace::zero(a.field, n);
  int dim_sum = 0;
  bool complete = true;
  for (const Subspace& p : pieces) {
    require(p.contains(subspace_product(a, a.full_space(), p)),
            "piece is not a left ideal");
    if (a.kind == AlgebraKind::Associative)
      require(p.contains(subspace_product(a, p, a.full_space())),
              "piece is not a right ideal");
    total = total.sum(p);
    dim_sum += p.dim();
    SubAlgebra sub = subalgebra_on(a, p);
    require(radical_report(sub.alg).radical.dim() == 0,
            "piece is not semisimple");
    require(
        subspace_product(sub.alg, sub.alg.full_space(), sub.alg.full_space())
                .dim() > 0,
        "piece multiplies to zero");
    SimplePiece sp;
    sp.space = p;
    sp.centroid_dim = int(
        matrix_commutant_basis(a.field, p.dim(), multiplier_ops(sub.alg))
            .size());
    sp.certified_simple = sp.centroid_dim == 1;
    if (sp.certified_simple) {
      sp.note = "centroid is the scalars; simple over every extension";
    } else {
      sp.split_degree_hint = sp.centroid_dim;
      sp.note =
          "centroid has dimension " + std::to_string(sp.centroid_dim) +
          "; no rational eigenvalue splits it further, but a scalar "
          "extension of degree at most " +
          std::to_string(sp.centroid_dim) + " may";
      complete = false;
    }
    out.pieces.push_back(std::move(sp));
  }
  require(dim_sum == n && total.dim() == n,
          "pieces do not decompose the algebra");
  out.complete = complete;
  return out;
}

InvariantDecomposition invariant_simple_decomposition(const Algebra& a,
                                                      const Structure& s) {
  InvariantDecomposition out;
  out.underlying = simple_ideal_decomposition(a);
  const int n = int(a.dim);
  std::vector<Matrix> ops = structure_operators(a, s);
  const int np = int(out.underlying.pieces.size());

  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  for (int i = 0; i < np; ++i) {
    // smallest invariant ideal containing the piece
    Subspace k = out.underlying.pieces[i].space;
    for (;;) {
      Subspace nk = k;
      for (const Matrix& op : ops) {
        std::vector<Vec> imgs;
        for (const Vec& v : k.basis()) imgs.push_back(op.apply(v));
        nk = nk.sum(Subspace::span(a.field, n, imgs));
      }
      nk = nk.sum(subspace_product(a, a.full_space(), nk));
      if (a.kind == AlgebraKind::Associative)
        nk = nk.sum(subspace_product(a, nk, a.full_space()));
      if (nk.dim() == k.dim()) break;
      k = nk;
    }
    for (int j = 0; j < np; ++j)
      if (j != i && out.underlying.pieces[j].space.intersect(k).dim() > 0)
        unite(i, j);
  }

  std::vector<int> root_index(np, -1);
  for (int i = 0; i < np; ++i) {
    int r = find(i);
    if (root_index[r] == -1) {
      root_index[r] = int(out.components.size());
      InvariantComponent comp;
      comp.space = Subspace::zero(a.field, n);
      comp.certified_minimal = true;
      out.components.push_back(std::move(comp));
    }
    InvariantComponent& comp = out.components[root_index[r]];
    comp.space = comp.space.sum(out.underlying.pieces[i].space);
    comp.piece_indices.push_back(i);
    comp.certified_minimal =
        comp.certified_minimal && out.underlying.pieces[i].certified_simple;
  }

  int dim_sum = 0;
  for (const InvariantComponent& comp : out.components) {
    dim_sum += comp.space.dim();
    require(subspace_invariant(a, s, comp.space),
            "invariant component is not invariant");
    require(comp.space.contains(
                subspace_product(a, a.full_space(), comp.space)),
            "invariant component is not an ideal");
  }
  require(dim_sum == n, "invariant components do not decompose the algebra");
  out.complete = out.underlying.complete;
  return out;
}

namespace {

/// base case of the splitting recursion: the radical squares to zero, and
/// the complement is found by one linear solve that imposes
/// multiplicativity and equivariance on a corrected section
Subspace equivariant_complement_base(const Algebra& a, const Structure& s,
                                     const Subspace& rad) {
  const FieldData* f = a.field;
  const int n = int(a.dim);
  QuotientAlgebra q = quotient_algebra(a, rad);
  const int qd = int(q.alg.dim);
  const int jd = rad.dim();
  if (qd == 0) return Subspace::zero(f, n);
  if (jd == 0) return a.full_space();

  std::vector<Matrix> eops;
  if (const auto* g = std::get_if<Grading>(&s)) {
    eops = g->projections;
  } else if (const auto* act = std::get_if<GroupAction>(&s)) {
    for (const GroupElem& e : act->generators) eops.push_back(e.mat);
  } else if (const auto* d = std::get_if<DerivationAction>(&s)) {
    eops = d->generators;
  }
  std::vector<Matrix> qops;
  for (const Matrix& m : eops) qops.push_back(q.proj * m * q.sect);

  const std::vector<Vec>& jb = rad.basis();
  std::vector<Vec> sect_col(qd);
  for (int c = 0; c < qd; ++c) sect_col[c] = q.sect.col(c);
  // products between section columns and radical basis vectors
  std::vector<std::vector<Vec>> s_j(qd, std::vector<Vec>(jd));
  std::vector<std::vector<Vec>> j_s(qd, std::vector<Vec>(jd));
  for (int c = 0; c < qd; ++c)
    for (int r = 0; r < jd; ++r) {
      s_j[c][r] = a.mul(sect_col[c], jb[r]);
      j_s[c][r] = a.mul(jb[r], sect_col[c]);
    }

  const int vars = jd * qd;  // unknown gamma(e_c) = sum_r x[r*qd+c] jb_r
  const int rows = (qd * qd + int(eops.size()) * qd) * n;
  Matrix big(f, rows, vars);
  Vec rhs = vec_zero(f, rows);
  int row = 0;
  for (int al = 0; al < qd; ++al)
    for (int be = 0; be < qd; ++be) {
      Vec p = q.alg.basis_product(std::size_t(al), std::size_t(be));
      Vec rv = vec_sub(a.mul(sect_col[al], sect_col[be]), q.sect.apply(p));
      for (int t = 0; t < n; ++t) {
        for (int r = 0; r < jd; ++r)
          for (int c = 0; c < qd; ++c) {
            Scalar coeff = p[c] * jb[r][t];
            if (c == be) coeff = coeff - s_j[al][r][t];
            if (c == al) coeff = coeff - j_s[be][r][t];
            big.at(row, r * qd + c) = coeff;
          }
        rhs[row] = rv[t];
        ++row;
      }
    }
  for (std::size_t m = 0; m < eops.size(); ++m) {
    const Matrix& op = eops[m];
    std::vector<Vec> op_jb(jd);
    for (int r = 0; r < jd; ++r) op_jb[r] = op.apply(jb[r]);
    for (int c = 0; c < qd; ++c) {
      Vec w = qops[m].col(c);
      Vec rv = vec_sub(q.sect.apply(w), op.apply(sect_col[c]));
      for (int t = 0; t < n; ++t) {
        for (int r = 0; r < jd; ++r)
          for (int cc = 0; cc < qd; ++cc) {
            Scalar coeff = Scalar::zero(f);
            if (cc == c) coeff = coeff + op_jb[r][t];
            coeff = coeff - w[cc] * jb[r][t];
            big.at(row, r * qd + cc) = coeff;
          }
        rhs[row] = rv[t];
        ++row;
      }
    }
  }

  auto x = solve(big, rhs);
  if (!x) {
    if (std::holds_alternative<DerivationAction>(s))
      throw ValidationError(
          "the derivation action admits no invariant complement to the "
          "radical; such an action genuinely obstructs the splitting");
    throw InternalError(
        "no invariant complement found although the splitting theorem "
        "guarantees one");
  }

  EchelonBasis eb(f, n);
  for (int c = 0; c < qd; ++c) {
    Vec col = sect_col[c];
    for (int r = 0; r < jd; ++r)
      col = vec_add(col, vec_scale((*x)[std::size_t(r * qd + c)], jb[r]));
    eb.insert(col);
  }
  Subspace b = eb.to_subspace();
  require(b.dim() == qd, "complement has wrong dimension");
  require(b.intersect(rad).dim() == 0, "complement meets the radical");
  require(b.contains(subspace_product(a, b, b)),
          "complement is not a subalgebra");
  require(subspace_invariant(a, s, b), "complement is not invariant");
  return b;
}

}  // namespace

SplittingReport invariant_splitting(const Algebra& a, const Structure& s) {
  SplittingReport rep;
  rep.method = a.kind == AlgebraKind::Associative
                   ? "invariant Wedderburn-Malcev complement"
                   : "invariant Levi subalgebra";
  rep.radical = radical_report(a).radical;
  require(subspace_invariant(a, s, rep.radical),
          "the radical must be invariant under the structure");
  Subspace rad2 = subspace_product(a, rep.radical, rep.radical);
  if (rad2.dim() == 0) {
    rep.complement = equivariant_complement_base(a, s, rep.radical);
    rep.stages = rep.radical.dim() == 0 ? 0 : 1;
  } else {
    QuotientAlgebra q = quotient_algebra(a, rad2);
    Structure qs = quotient_structure(a, s, q);
    Subspace qrad = radical(q.alg);
    require(qrad.dim() == rep.radical.dim() - rad2.dim(),
            "radical of the quotient has unexpected dimension");
    require(subspace_product(q.alg, qrad, qrad).dim() == 0,
            "radical of the quotient does not square to zero");
    Subspace qb = equivariant_complement_base(q.alg, qs, qrad);
    EchelonBasis pre(a.field, int(a.dim));
    for (const Vec& v : qb.basis()) pre.insert(q.sect.apply(v));
    for (const Vec& v : rad2.basis()) pre.insert(v);
    Subspace a1 = pre.to_subspace();
    require(a1.dim() == qb.dim() + rad2.dim(), "preimage dimension mismatch");
    SubAlgebra sub = subalgebra_on(a, a1);
    Structure s1 = restrict_structure(a, s, sub);
    SplittingReport inner = invariant_splitting(sub.alg, s1);
    require(embed_subspace(sub, inner.radical) == rad2,
            "recursion radical mismatch");
    rep.complement = embed_subspace(sub, inner.complement);
    rep.stages = inner.stages + 1;
  }
  require(rep.complement.intersect(rep.radical).dim() == 0,
          "complement meets the radical");
  require(rep.complement.dim() + rep.radical.dim() == int(a.dim),
          "complement and radical do not fill the algebra");
  require(rep.complement.contains(
              subspace_product(a, rep.complement, rep.complement)),
          "complement is not a subalgebra");
  require(subspace_invariant(a, s, rep.complement),
          "complement is not invariant");
  return rep;
}

std::optional<Subspace> invariant_complement(const Algebra& a,
                                             const std::vector<Matrix>& ops,
                                             const Subspace& inner,
                                             const Subspace& outer) {
  const FieldData* f = a.field;
  const int n = int(a.dim);
  if (!outer.contains(inner))
    throw ValidationError("inner subspace must lie inside the outer one");
  const int p = outer.dim();
  const int i = inner.dim();
  if (i == 0) return outer;
  if (i == p) return Subspace::zero(f, n);

  std::vector<Matrix> outer_ops, inner_ops;
  for (const Matrix& m : ops) {
    outer_ops.push_back(restrict_to(m, outer));
    inner_ops.push_back(restrict_to(m, inner));
  }

  const int vars = i * p;  // projection matrix P, pi(o_c) = sum_r P(r,c) v_r
  const int rows = i * i + int(ops.size()) * i * p;
  Matrix big(f, rows, vars);
  Vec rhs = vec_zero(f, rows);
  int row = 0;
  for (int t = 0; t < i; ++t) {
    auto w = outer.coordinates(inner.basis()[t]);
    if (!w) throw InternalError("inner basis escapes the outer space");
    for (int r = 0; r < i; ++r) {
      for (int c = 0; c < p; ++c) big.at(row, r * p + c) = (*w)[c];
      rhs[row] = r == t ? Scalar::one(f) : Scalar::zero(f);
      ++row;
    }
  }
  for (std::size_t m = 0; m < ops.size(); ++m) {
    const Matrix& o = outer_ops[m];
    const Matrix& nn = inner_ops[m];
    for (int r = 0; r < i; ++r)
      for (int c = 0; c < p; ++c) {
        for (int cp = 0; cp < p; ++cp)
          big.at(row, r * p + cp) = big.at(row, r * p + cp) + o.at(cp, c);
        for (int rp = 0; rp < i; ++rp)
          big.at(row, rp * p + c) = big.at(row, rp * p + c) - nn.at(r, rp);
        ++row;
      }
  }
  auto x = solve(big, rhs);
  if (!x) return std::nullopt;
  Matrix pm(f, i, p);
  for (int r = 0; r < i; ++r)
    for (int c = 0; c < p; ++c) pm.at(r, c) = (*x)[std::size_t(r * p + c)];
  Subspace ker_c = kernel(pm);
  Subspace t_space = embed_coords(outer, ker_c);
  require(t_space.dim() == p - i, "complement has wrong dimension");
  require(t_space.intersect(inner).dim() == 0, "complement meets the inner");
  for (const Matrix& m : ops)
    for (const Vec& v : t_space.basis())
      require(t_space.contains(m.apply(v)), "complement is not invariant");
  return t_space;
}

}  // namespace pialg
