#include "exponent.hpp"

#include <algorithm>
#include <functional>

#include "errors.hpp"
#include "modrep.hpp"

namespace pialg {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

std::vector<Matrix> multiplication_ops(const Algebra& a) {
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < a.dim; ++i)
    ops.push_back(a.left_mult(a.unit_vec(i)));
  if (a.kind == AlgebraKind::Associative)
    for (std::size_t i = 0; i < a.dim; ++i)
      ops.push_back(a.right_mult(a.unit_vec(i)));
  return ops;
}

/// the subquotient upper/lower as a module, with ambient operators pushed
/// down to it
struct SectionModule {
  int dim = 0;
  std::vector<Vec> reps;  ///< representatives of the section basis
  Matrix proj;            ///< section coordinates, valid on the upper space
};

SectionModule make_section(const FieldData* f, int n, const Subspace& upper,
                           const Subspace& lower) {
  SectionModule sec;
  sec.proj = Matrix(f, 0, 0);
  EchelonBasis eb(f, n);
  for (const Vec& v : lower.basis()) eb.insert(v);
  for (const Vec& v : upper.basis())
    if (eb.insert(v)) sec.reps.push_back(v);
  sec.dim = int(sec.reps.size());
  if (sec.dim == 0) return sec;
  // complete to a basis of the ambient space and invert
  Matrix t(f, n, n);
  int col = 0;
  for (const Vec& v : lower.basis()) t.set_col(col++, v);
  for (const Vec& v : sec.reps) t.set_col(col++, v);
  Subspace rest = eb.to_subspace().coordinate_complement();
  for (const Vec& v : rest.basis()) t.set_col(col++, v);
  require(col == n, "section basis completion failed");
  auto inv = inverse(t);
  require(inv.has_value(), "section basis is singular");
  Matrix full_proj(f, sec.dim, n);
  for (int r = 0; r < sec.dim; ++r)
    full_proj.set_row(r, inv->row(lower.dim() + r));
  sec.proj = full_proj;
  return sec;
}

Matrix push_to_section(const SectionModule& sec, const Matrix& m) {
  const FieldData* f = m.field_data();
  Matrix out(f, sec.dim, sec.dim);
  for (int c = 0; c < sec.dim; ++c)
    out.set_col(c, sec.proj.apply(m.apply(sec.reps[c])));
  return out;
}

/// Lie algebra spanned by the given matrices and their iterated commutators
Subspace matrix_lie_closure(const FieldData* f, int n,
                            const std::vector<Matrix>& gens) {
  EchelonBasis eb(f, n * n);
  std::vector<Matrix> basis;
  for (const Matrix& g : gens)
    if (eb.insert(g.flatten())) basis.push_back(g);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Matrix c = basis[i] * basis[j] - basis[j] * basis[i];
      if (eb.insert(c.flatten())) basis.push_back(c);
    }
  return eb.to_subspace();
}

/// whether the Lie algebra generated by the derivation generators is
/// semisimple (the hypothesis of the exponent-equality theorem)
bool derivation_algebra_semisimple(const Algebra& a,
                                   const DerivationAction& act) {
  const FieldData* f = a.field;
  const int n = int(a.dim);
  Subspace g = matrix_lie_closure(f, n, act.generators);
  if (g.dim() == 0) return true;
  std::vector<Matrix> basis;
  for (const Vec& v : g.basis()) basis.push_back(Matrix::unflatten(f, n, n, v));
  std::vector<std::string> names(basis.size(), "d");
  std::vector<Scalar> table;
  for (const Matrix& x : basis)
    for (const Matrix& y : basis) {
      auto coords = g.coordinates((x * y - y * x).flatten());
      require(coords.has_value(), "commutator escapes the Lie closure");
      for (const Scalar& s : *coords) table.push_back(s);
    }
  Algebra lie = make_algebra(f, AlgebraKind::Lie, names, table);
  return radical_report(lie).radical.dim() == 0;
}

}  // namespace

ExponentReport associative_exponent(const Algebra& a, const Structure& s) {
  if (a.kind != AlgebraKind::Associative)
    throw ValidationError("the product-chain exponent needs an associative "
                          "algebra; use the chain formula for Lie algebras");
  ExponentReport rep;
  const int n = int(a.dim);
  if (n == 0) return rep;

  SplittingReport split = invariant_splitting(a, s);
  const Subspace& rad = split.radical;
  if (split.complement.dim() == 0) {
    rep.note = "the algebra is nilpotent";
    return rep;
  }
  SubAlgebra sub = subalgebra_on(a, split.complement);
  Structure ss = restrict_structure(a, s, sub);
  InvariantDecomposition parts = invariant_simple_decomposition(sub.alg, ss);

  std::vector<Subspace> comps;
  std::vector<int> dims;
  for (const InvariantComponent& c : parts.components) {
    comps.push_back(embed_subspace(sub, c.space));
    dims.push_back(c.space.dim());
  }
  const int q = int(comps.size());
  int remaining_total = 0;
  for (int d : dims) remaining_total += d;

  std::vector<int> current, best_witness;
  int best = 0;
  std::vector<bool> used(q, false);
  // depth-first over sequences of distinct components linked through the
  // radical by nonzero products
  std::function<void(const Subspace&, int, int)> extend =
      [&](const Subspace& prod, int dim_sum, int unused_sum) {
        if (dim_sum > best) {
          best = dim_sum;
          best_witness = current;
        }
        if (dim_sum + unused_sum <= best) return;
        for (int j = 0; j < q; ++j) {
          if (used[j]) continue;
          Subspace nxt =
              subspace_product(a, subspace_product(a, prod, rad), comps[j]);
          if (nxt.dim() == 0) continue;
          used[j] = true;
          current.push_back(j);
          extend(nxt, dim_sum + dims[j], unused_sum - dims[j]);
          current.pop_back();
          used[j] = false;
        }
      };
  for (int i = 0; i < q; ++i) {
    used[i] = true;
    current.push_back(i);
    extend(comps[i], dims[i], remaining_total - dims[i]);
    current.pop_back();
    used[i] = false;
  }

  rep.d = best;
  rep.witness = best_witness;
  for (int i : best_witness) rep.witness_dims.push_back(dims[i]);
  rep.components_used = comps;
  rep.certified = parts.complete;
  if (!rep.certified)
    rep.note =
        "some component is simple over the base field only; the value "
        "matches the closed-field statement after a scalar extension";

  // re-verify the winning product chain
  if (!best_witness.empty()) {
    Subspace prod = comps[best_witness[0]];
    int dim_sum = dims[best_witness[0]];
    for (std::size_t k = 1; k < best_witness.size(); ++k) {
      prod = subspace_product(a, subspace_product(a, prod, rad),
                              comps[best_witness[k]]);
      dim_sum += dims[best_witness[k]];
    }
    require(prod.dim() > 0 && dim_sum == best, "witness chain fails recheck");
  }
  require(rep.d >= 0 && rep.d <= n, "exponent out of range");
  return rep;
}

namespace {

void verify_lie_chain(const Algebra& l, const Structure& s, LieChain& chain,
                      int q_max, const Subspace& levi) {
  const FieldData* f = l.field;
  const int n = int(l.dim);
  const std::size_t r = chain.upper.size();
  if (r == 0 || chain.lower.size() != r)
    throw ValidationError("a chain needs matching nonempty lists of ideals");
  chain.complements.clear();
  chain.depths.clear();
  chain.verified = false;
  chain.absolutely = true;

  std::vector<Matrix> sops = structure_operators(l, s);
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < l.dim; ++i) ads.push_back(l.ad(l.unit_vec(i)));
  std::vector<Matrix> bops = sops;
  for (const Vec& b : levi.basis()) bops.push_back(l.ad(b));

  std::vector<Subspace> sections_ok;
  for (std::size_t k = 0; k < r; ++k) {
    const Subspace& up = chain.upper[k];
    const Subspace& lo = chain.lower[k];
    if (!up.contains(lo))
      throw ValidationError("chain pair violates the containment J inside I");
    for (const Subspace* sp : {&up, &lo}) {
      if (!sp->contains(subspace_bracket(l, l.full_space(), *sp)))
        throw ValidationError("chain member is not an ideal");
      if (!subspace_invariant(l, s, *sp))
        throw ValidationError("chain member is not structure-invariant");
    }
    SectionModule sec = make_section(f, n, up, lo);
    if (sec.dim == 0) {
      chain.note = "a section is zero, so it cannot be irreducible";
      return;
    }
    std::vector<Matrix> pushed;
    for (const Matrix& m : ads) pushed.push_back(push_to_section(sec, m));
    for (const Matrix& m : sops) pushed.push_back(push_to_section(sec, m));
    IrreducibilityReport ir = module_irreducible(f, sec.dim, pushed);
    if (ir.status == IrreducibilityReport::Status::Reducible) {
      chain.note = "a section has a proper invariant subspace";
      return;
    }
    if (ir.status == IrreducibilityReport::Status::Inconclusive) {
      chain.note = "irreducibility of a section could not be decided: " +
                   ir.note;
      return;
    }
    if (!ir.absolutely_irreducible) chain.absolutely = false;
  }

  // invariant module complements T_k and the bracket-depth search
  std::vector<std::vector<Subspace>> towers;
  for (std::size_t k = 0; k < r; ++k) {
    auto t = invariant_complement(l, bops, chain.lower[k], chain.upper[k]);
    if (!t) {
      chain.note = "no invariant module complement for a chain pair";
      return;
    }
    chain.complements.push_back(*t);
    // iterated brackets with the whole algebra; the tower repeats once a
    // value reappears, so only distinct stages are kept
    std::vector<Subspace> tower = {*t};
    for (int qd = 1; qd <= q_max; ++qd) {
      Subspace nxt = subspace_bracket(l, tower.back(), l.full_space());
      bool seen = false;
      for (const Subspace& u : tower)
        if (u == nxt) {
          seen = true;
          break;
        }
      if (seen) break;
      tower.push_back(nxt);
    }
    towers.push_back(std::move(tower));
  }
  std::vector<int> depths(r, 0), found;
  std::function<bool(std::size_t, const Subspace&)> pick =
      [&](std::size_t k, const Subspace& acc) {
        if (acc.dim() == 0) return false;
        if (k == r) {
          found = depths;
          return true;
        }
        for (std::size_t qd = 0; qd < towers[k].size(); ++qd) {
          depths[k] = int(qd);
          if (pick(k + 1, subspace_bracket(l, acc, towers[k][qd]))) return true;
        }
        return false;
      };
  bool ok = false;
  for (std::size_t qd = 0; qd < towers[0].size() && !ok; ++qd) {
    depths[0] = int(qd);
    ok = pick(1, towers[0][qd]);
  }
  if (!ok) {
    chain.note = "every iterated bracket of the complements vanishes";
    return;
  }
  chain.depths = found;

  Subspace ann = l.full_space();
  for (std::size_t k = 0; k < r; ++k)
    ann = ann.intersect(ann_module(l, chain.upper[k], chain.lower[k]));
  chain.value = n - ann.dim();
  chain.verified = true;
  if (!chain.absolutely && chain.note.empty())
    chain.note =
        "sections are irreducible over the base field; a scalar extension "
        "may split them";
}

}  // namespace

LieExponentReport lie_exponent_from_chains(const Algebra& l,
                                           const Structure& s,
                                           const std::vector<LieChain>& chains,
                                           int q_max) {
  if (l.kind != AlgebraKind::Lie)
    throw ValidationError("the chain formula needs a Lie algebra");
  LieExponentReport out;
  const int n = int(l.dim);
  if (q_max < 0) q_max = n;

  SplittingReport split = invariant_splitting(l, s);

  out.chains = chains;
  LieChain dflt;
  dflt.upper = {l.full_space()};
  dflt.lower = {split.radical};
  out.chains.push_back(dflt);

  for (LieChain& c : out.chains)
    verify_lie_chain(l, s, c, q_max, split.complement);

  out.report.d = 0;
  out.report.note = "no chain verified; the empty chain gives zero";
  for (std::size_t i = 0; i < out.chains.size(); ++i) {
    const LieChain& c = out.chains[i];
    if (!c.verified || c.value <= out.report.d) continue;
    out.report.d = c.value;
    out.best_chain = int(i);
  }
  if (out.best_chain >= 0) {
    const LieChain& c = out.chains[std::size_t(out.best_chain)];
    out.report.witness.assign(1, out.best_chain);
    out.report.components_used = c.complements;
    for (const Subspace& t : c.complements)
      out.report.witness_dims.push_back(t.dim());
    out.report.certified = c.absolutely;
    out.report.note = c.note;
  }
  require(out.report.d >= 0 && out.report.d <= n, "exponent out of range");
  return out;
}

SimplicityReport is_invariant_simple(const Algebra& a, const Structure& s) {
  SimplicityReport rep;
  const int n = int(a.dim);
  if (n == 0) {
    rep.note = "the zero algebra is not simple";
    return rep;
  }
  if (subspace_product(a, a.full_space(), a.full_space()).dim() == 0) {
    rep.note = "the algebra multiplies to zero";
    return rep;
  }
  std::vector<Matrix> ops = multiplication_ops(a);
  for (const Matrix& m : structure_operators(a, s)) ops.push_back(m);
  IrreducibilityReport ir = module_irreducible(a.field, n, ops);
  switch (ir.status) {
    case IrreducibilityReport::Status::Irreducible:
      rep.simple = true;
      rep.absolutely = ir.absolutely_irreducible;
      if (!rep.absolutely)
        rep.note =
            "no proper invariant ideal over the base field; a scalar "
            "extension may still split the algebra";
      break;
    case IrreducibilityReport::Status::Reducible:
      rep.certificate = ir.proper_submodule;
      rep.note = "a proper nonzero invariant ideal exists";
      break;
    case IrreducibilityReport::Status::Inconclusive:
      rep.conclusive = false;
      rep.needed_extension_degree = ir.candidate_extension_degree;
      rep.note = "undecided over the base field: " + ir.note;
      break;
  }
  return rep;
}

CriterionReport simplicity_criterion_report(const Algebra& a,
                                            const Structure& s,
                                            const std::vector<LieChain>& chains) {
  CriterionReport rep;
  bool exponent_absolute = true;
  if (a.kind == AlgebraKind::Associative) {
    rep.exponent = associative_exponent(a, s);
    exponent_absolute = rep.exponent.certified;
  } else {
    LieExponentReport le = lie_exponent_from_chains(a, s, chains);
    rep.exponent = le.report;
    for (const LieChain& c : le.chains)
      if (c.verified && !c.absolutely) exponent_absolute = false;
  }
  rep.simplicity = is_invariant_simple(a, s);

  const bool exp_says_simple = rep.exponent.d == int(a.dim);
  if (rep.simplicity.conclusive) {
    if (a.kind == AlgebraKind::Associative) {
      require(exp_says_simple == rep.simplicity.simple,
              "exponent and simplicity test disagree");
      rep.note = "exponent criterion consistent with the simplicity test";
    } else if (exponent_absolute && rep.simplicity.absolutely) {
      require(exp_says_simple == rep.simplicity.simple,
              "exponent and simplicity test disagree");
      rep.note = "exponent criterion consistent with the simplicity test";
    } else if (exp_says_simple == rep.simplicity.simple) {
      rep.note = "exponent criterion consistent with the simplicity test";
    } else {
      rep.note =
          "criterion not enforced: the chain search is a lower bound over "
          "the base field";
    }
  } else {
    rep.note = "simplicity test inconclusive; criterion not checked";
  }

  if (const auto* d = std::get_if<DerivationAction>(&s)) {
    if (a.kind == AlgebraKind::Associative &&
        derivation_algebra_semisimple(a, *d)) {
      rep.trivial_exponent = associative_exponent(a, TrivialStructure{});
      require(rep.trivial_exponent->d == rep.exponent.d,
              "derivation exponent differs from the ordinary one although "
              "the acting algebra is semisimple");
      rep.note += "; matches the ordinary exponent";
    } else if (a.kind == AlgebraKind::Associative) {
      rep.note += "; acting algebra not semisimple, equality not asserted";
    }
  }
  return rep;
}

}  // namespace pialg
