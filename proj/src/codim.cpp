#include "codim.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <utility>

#include "errors.hpp"
#include "exponent.hpp"

namespace pialg {

const char* codim_regime_name(CodimRegime r) {
  switch (r) {
    case CodimRegime::Ordinary: return "ordinary";
    case CodimRegime::Graded: return "graded";
    case CodimRegime::Group: return "group";
    case CodimRegime::Operator: return "operator";
  }
  return "unknown";
}

long codim_budget() {
  if (const char* e = std::getenv("CODIM_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && v > 0) return v;
  }
  return 100000000L;
}

namespace {

/// substitution domains per variable plus the decoration operators; an
/// empty operator list means plain undecorated monomials
struct EvalBlock {
  std::vector<std::vector<Vec>> domains;
  std::vector<Matrix> ops;
};

long double block_rows_est(int n, const EvalBlock& b) {
  long double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  if (!b.ops.empty())
    for (int i = 0; i < n; ++i) r *= (long double)b.ops.size();
  return r;
}

long double block_cols_est(const Algebra& a, const EvalBlock& b) {
  long double c = (long double)a.dim;
  for (const auto& d : b.domains) c *= (long double)d.size();
  return c;
}

void budget_check(const Algebra& a, int n,
                  const std::vector<const EvalBlock*>& blocks) {
  long double total = 0, rows = 0, cols = 0;
  for (const EvalBlock* b : blocks) {
    long double r = block_rows_est(n, *b), c = block_cols_est(a, *b);
    total += r * c;
    rows += r;
    cols += c;
  }
  long double budget = (long double)codim_budget();
  if (total > budget)
    throw BudgetError("codimension elimination for n = " + std::to_string(n) +
                      " needs about " + std::to_string((double)total) +
                      " matrix entries (" + std::to_string((long)rows) +
                      " monomial rows, " + std::to_string((long)cols) +
                      " substitution columns), over the budget of " +
                      std::to_string(codim_budget()) +
                      "; set CODIM_BUDGET to raise it");
}

/// streams the pairing between the block's decorated monomials and its
/// substitution tuples into an elimination. Tuple coordinates are
/// enumerated in evaluation order so word prefixes are shared across the
/// subtree.
EchelonBasis block_echelon(const Algebra& a, int n, const EvalBlock& blk,
                           long& rows_out, long& cols_out) {
  const FieldData* f = a.field;
  std::vector<long> stride(n, 1);
  for (int v = n - 2; v >= 0; --v)
    stride[v] = stride[v + 1] * long(blk.domains[v + 1].size());
  long tuples = stride[0] * long(blk.domains[0].size());
  long cols = tuples * long(a.dim);
  size_t nops = blk.ops.size();

  // images of every domain vector under every decoration, computed once
  std::vector<std::vector<std::vector<Vec>>> img(nops);
  for (size_t o = 0; o < nops; ++o) {
    img[o].resize(n);
    for (int v = 0; v < n; ++v)
      for (const Vec& w : blk.domains[v])
        img[o][v].push_back(blk.ops[o].apply(w));
  }

  EchelonBasis eb(f, int(cols));
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<size_t> dec(n, 0);
  long rows = 0;
  do {
    std::fill(dec.begin(), dec.end(), 0);
    for (;;) {
      Vec row = vec_zero(f, int(cols));
      std::function<void(int, long, const Vec&)> walk = [&](int p, long tup,
                                                            const Vec& prefix) {
        int v = sigma[p];
        const std::vector<Vec>& dom = nops ? img[dec[p]][v] : blk.domains[v];
        for (size_t j = 0; j < dom.size(); ++j) {
          long tup2 = tup + long(j) * stride[v];
          // the product is the bracket for Lie algebras, so this fold is
          // the left-normed word in both kinds
          Vec cur = p == 0 ? dom[j] : a.mul(prefix, dom[j]);
          if (p + 1 == n) {
            for (size_t k = 0; k < a.dim; ++k)
              if (!cur[k].is_zero()) row[size_t(tup2) * a.dim + k] = cur[k];
          } else if (!vec_is_zero(cur)) {
            walk(p + 1, tup2, cur);
          }
        }
      };
      walk(0, 0, Vec());
      eb.insert(std::move(row));
      ++rows;
      if (!nops) break;
      int p = n - 1;
      while (p >= 0 && ++dec[p] == nops) dec[p--] = 0;
      if (p < 0) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  rows_out += rows;
  cols_out += cols;
  return eb;
}

long block_rank(const Algebra& a, int n, const EvalBlock& blk, long& rows_out,
                long& cols_out) {
  return block_echelon(a, n, blk, rows_out, cols_out).rank();
}

std::vector<Vec> unit_domain(const Algebra& a) {
  std::vector<Vec> full;
  for (std::size_t i = 0; i < a.dim; ++i) full.push_back(a.unit_vec(i));
  return full;
}

/// the per-label-vector blocks of a graded codimension, with the support
/// assignment behind each block
struct GradedBlocks {
  std::vector<EvalBlock> blocks;
  std::vector<std::vector<int>> assignments;
  std::vector<int> support;
};

GradedBlocks graded_blocks(const Grading& g, int n) {
  GradedBlocks out;
  for (std::size_t c = 0; c < g.components.size(); ++c)
    if (g.components[c].dim() > 0) out.support.push_back(int(c));
  if (out.support.empty()) throw ValidationError("grading has empty support");
  std::vector<int> lv(n, 0);
  for (;;) {
    EvalBlock b;
    b.domains.resize(n);
    for (int v = 0; v < n; ++v)
      b.domains[v] = g.components[out.support[lv[v]]].basis();
    out.blocks.push_back(std::move(b));
    out.assignments.push_back(lv);
    int p = n - 1;
    while (p >= 0 && ++lv[p] == int(out.support.size())) lv[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

/// the single elimination block of the ordinary/group/operator regimes
EvalBlock plain_block(const Algebra& a, const Structure& s, int n,
                      CodimRegime& regime,
                      std::vector<std::string>& op_labels) {
  EvalBlock b;
  b.domains.assign(n, unit_domain(a));
  if (std::holds_alternative<TrivialStructure>(s)) {
    regime = CodimRegime::Ordinary;
  } else {
    regime = std::holds_alternative<GroupAction>(s) ? CodimRegime::Group
                                                    : CodimRegime::Operator;
    OperatorEnvelope env = operator_envelope(a, s);
    op_labels = env.labels;
    b.ops = std::move(env.basis);
  }
  return b;
}

}  // namespace

CodimReport codim(const Algebra& a, const Structure& s, int n) {
  if (n < 1) throw ValidationError("codimension index must be at least 1");
  if (a.dim == 0)
    throw ValidationError("codimension needs a nonzero algebra");
  CodimReport rep;
  rep.n = n;

  if (const Grading* g = std::get_if<Grading>(&s)) {
    if (g->projections.empty())
      throw InternalError("grading used before validation");
    rep.regime = CodimRegime::Graded;
    GradedBlocks gb = graded_blocks(*g, n);
    std::vector<const EvalBlock*> ptrs;
    for (const auto& b : gb.blocks) ptrs.push_back(&b);
    budget_check(a, n, ptrs);

    for (std::size_t i = 0; i < gb.blocks.size(); ++i) {
      LabelBlock lb;
      for (int v = 0; v < n; ++v)
        lb.labels.push_back(g->labels[gb.support[gb.assignments[i][v]]]);
      long r = 0, c = 0;
      lb.rank = block_rank(a, n, gb.blocks[i], r, c);
      lb.rows = r;
      lb.cols = c;
      rep.rows += r;
      rep.cols += c;
      rep.value += lb.rank;
      rep.blocks.push_back(std::move(lb));
    }
    return rep;
  }

  std::vector<std::string> op_labels;
  EvalBlock b = plain_block(a, s, n, rep.regime, op_labels);
  rep.operator_labels = std::move(op_labels);
  budget_check(a, n, {&b});
  rep.value = block_rank(a, n, b, rep.rows, rep.cols);
  return rep;
}

std::vector<EvalSpace> codim_row_spaces(const Algebra& a, const Structure& s,
                                        int n) {
  if (n < 1) throw ValidationError("codimension index must be at least 1");
  if (a.dim == 0)
    throw ValidationError("codimension needs a nonzero algebra");
  std::vector<EvalSpace> out;

  auto finish = [&](const EvalBlock& b, std::vector<int> labels) {
    long r = 0, c = 0;
    EvalSpace es;
    es.space = block_echelon(a, n, b, r, c).to_subspace();
    for (const auto& d : b.domains) es.domain_sizes.push_back(long(d.size()));
    es.labels = std::move(labels);
    out.push_back(std::move(es));
  };

  if (const Grading* g = std::get_if<Grading>(&s)) {
    if (g->projections.empty())
      throw InternalError("grading used before validation");
    GradedBlocks gb = graded_blocks(*g, n);
    std::vector<const EvalBlock*> ptrs;
    for (const auto& b : gb.blocks) ptrs.push_back(&b);
    budget_check(a, n, ptrs);
    for (std::size_t i = 0; i < gb.blocks.size(); ++i)
      finish(gb.blocks[i], gb.assignments[i]);
    return out;
  }

  CodimRegime regime = CodimRegime::Ordinary;
  std::vector<std::string> op_labels;
  EvalBlock b = plain_block(a, s, n, regime, op_labels);
  budget_check(a, n, {&b});
  finish(b, {});
  return out;
}

CodimReport codim_via_dual_action(const Algebra& a, const Grading& g, int n) {
  Structure dual = dual_action_from_grading(a, g);
  ValidationReport vr = validate_structure(a, dual);
  if (!vr.ok)
    throw InternalError("dual character action failed validation: " +
                        vr.problems.front());
  CodimReport rep = codim(a, dual, n);
  rep.note = "graded codimension via the dual character action";
  return rep;
}

IdentityReport is_identity(const Algebra& a, const Structure& s,
                           const MultilinearPolynomial& f) {
  int n = f.n;
  if (n < 1) throw ValidationError("polynomial arity must be at least 1");
  IdentityReport rep;
  if (f.terms.empty()) return rep;

  for (const Matrix& op : f.ops)
    if (op.rows() != int(a.dim) || op.cols() != int(a.dim))
      throw ValidationError("decoration operator shape does not match the algebra");
  for (const auto& [coeff, mon] : f.terms) {
    (void)coeff;
    if (mon.order.size() != size_t(n) || mon.decorations.size() != size_t(n))
      throw ValidationError("monomial arity disagrees with the polynomial");
    std::vector<bool> seen(n, false);
    for (int v : mon.order) {
      if (v < 0 || v >= n || seen[v])
        throw ValidationError("monomial is not multilinear in x_0..x_" +
                              std::to_string(n - 1));
      seen[v] = true;
    }
    for (int d : mon.decorations)
      if (d < -1 || d >= int(f.ops.size()))
        throw ValidationError("decoration index out of range");
  }

  std::vector<std::vector<Vec>> domains(n);
  if (!f.var_labels.empty()) {
    const Grading* g = std::get_if<Grading>(&s);
    if (!g)
      throw ValidationError("labelled variables need a graded algebra");
    if (g->projections.empty())
      throw InternalError("grading used before validation");
    if (f.var_labels.size() != size_t(n))
      throw ValidationError("one label per variable is required");
    for (int v = 0; v < n; ++v) {
      int c = g->component_of(f.var_labels[v]);
      if (c < 0)
        throw ValidationError("variable label " +
                              g->group.str(f.var_labels[v]) +
                              " is outside the grading support");
      domains[v] = g->components[c].basis();
    }
  } else {
    domains.assign(n, unit_domain(a));
  }

  long double tuples_est = 1;
  for (const auto& d : domains) tuples_est *= (long double)d.size();
  if (tuples_est * (long double)f.terms.size() * n >
      (long double)codim_budget())
    throw BudgetError("identity check needs too many evaluations; set "
                      "CODIM_BUDGET to raise the budget");

  std::vector<long> t(n, 0);
  for (;;) {
    Vec acc = vec_zero(a.field, int(a.dim));
    for (const auto& [coeff, mon] : f.terms) {
      Vec cur;
      for (int p = 0; p < n; ++p) {
        int v = mon.order[p];
        Vec w = domains[v][t[v]];
        if (mon.decorations[p] >= 0) w = f.ops[mon.decorations[p]].apply(w);
        cur = p == 0 ? std::move(w) : a.mul(cur, w);
      }
      acc = vec_add(acc, vec_scale(coeff, cur));
    }
    if (!vec_is_zero(acc)) {
      rep.holds = false;
      for (int v = 0; v < n; ++v) {
        rep.witness.push_back(int(t[v]));
        rep.witness_vectors.push_back(domains[v][t[v]]);
      }
      rep.value = acc;
      return rep;
    }
    int p = n - 1;
    while (p >= 0 && ++t[p] == long(domains[p].size())) t[p--] = 0;
    if (p < 0) break;
  }
  return rep;
}

CodimSeries codim_series(const Algebra& a, const Structure& s, int n_max) {
  if (n_max < 1) throw ValidationError("series length must be at least 1");
  CodimSeries out;
  for (int n = 1; n <= n_max; ++n) out.entries.push_back(codim(a, s, n));
  try {
    if (a.kind == AlgebraKind::Associative) {
      ExponentReport er = associative_exponent(a, s);
      out.predicted_exponent = er.d;
      out.exponent_note =
          er.certified ? "certified" : "not certified: " + er.note;
    } else {
      LieExponentReport lr = lie_exponent_from_chains(a, s, {});
      out.predicted_exponent = lr.report.d;
      out.exponent_note =
          lr.report.certified ? "certified" : "not certified: " + lr.report.note;
    }
  } catch (const ValidationError& e) {
    out.predicted_exponent = -1;
    out.exponent_note = e.what();
  }
  return out;
}

}  // namespace pialg
