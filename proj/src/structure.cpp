#include "structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace pialg {

GradeLabel GradingGroup::canon(GradeLabel g) const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    long m = torsion[i];
    long& x = g.v[free_rank + i];
    x = ((x % m) + m) % m;
  }
  return g;
}

GradeLabel GradingGroup::add(const GradeLabel& a, const GradeLabel& b) const {
  GradeLabel out;
  out.v.resize(label_len());
  for (std::size_t i = 0; i < label_len(); ++i) out.v[i] = a.v[i] + b.v[i];
  return canon(out);
}

GradeLabel GradingGroup::zero() const {
  GradeLabel out;
  out.v.assign(label_len(), 0);
  return out;
}

std::string GradingGroup::str(const GradeLabel& g) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < g.v.size(); ++i) {
    if (i) os << ",";
    os << g.v[i];
  }
  os << ")";
  return os.str();
}

int Grading::component_of(const GradeLabel& g) const {
  GradeLabel c = group.canon(g);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == c) return int(i);
  return -1;
}

const char* structure_kind_name(const Structure& s) {
  if (std::holds_alternative<TrivialStructure>(s)) return "trivial";
  if (std::holds_alternative<Grading>(s)) return "grading";
  if (std::holds_alternative<GroupAction>(s)) return "group";
  return "derivation";
}

namespace {

std::string matrix_key(const Matrix& m, bool anti) {
  std::ostringstream os;
  os << (anti ? "a|" : "h|");
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) os << m.at(r, c).str() << ";";
  return os.str();
}

bool is_morphism(const Algebra& a, const Matrix& m, bool anti) {
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      Vec lhs = m.apply(a.basis_product(i, j));
      Vec fi = m.apply(a.unit_vec(i));
      Vec fj = m.apply(a.unit_vec(j));
      Vec rhs = anti ? a.mul(fj, fi) : a.mul(fi, fj);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

bool is_derivation(const Algebra& a, const Matrix& d) {
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      Vec lhs = d.apply(a.basis_product(i, j));
      Vec rhs = vec_add(a.mul(d.apply(a.unit_vec(i)), a.unit_vec(j)),
                        a.mul(a.unit_vec(i), d.apply(a.unit_vec(j))));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

ValidationReport validate_grading(const Algebra& a, Grading& g) {
  ValidationReport rep;
  const int n = int(a.dim);
  for (long m : g.group.torsion)
    if (m < 1) rep.fail("torsion modulus must be positive");
  if (g.labels.size() != g.components.size()) {
    rep.fail("label and component counts differ");
    return rep;
  }
  if (g.labels.empty()) {
    rep.fail("grading needs at least one component");
    return rep;
  }
  for (auto& l : g.labels) {
    if (l.v.size() != g.group.label_len()) {
      rep.fail("label length does not match the grading group");
      return rep;
    }
    l = g.group.canon(l);
  }
  for (std::size_t i = 0; i < g.labels.size(); ++i)
    for (std::size_t j = i + 1; j < g.labels.size(); ++j)
      if (g.labels[i] == g.labels[j])
        rep.fail("duplicate grading label " + g.group.str(g.labels[i]));
  int total = 0;
  Subspace sum = Subspace::zero(a.field, n);
  for (std::size_t i = 0; i < g.components.size(); ++i) {
    const Subspace& c = g.components[i];
    if (c.ambient_dim() != n || c.field_data() != a.field) {
      rep.fail("component lives in the wrong space");
      return rep;
    }
    if (c.dim() == 0)
      rep.fail("empty component " + g.group.str(g.labels[i]) +
               "; drop it from the support");
    total += c.dim();
    sum = sum.sum(c);
  }
  if (!rep.ok) return rep;
  if (total != n || sum.dim() != n) {
    rep.fail("components do not decompose the algebra as a direct sum");
    return rep;
  }
  for (std::size_t i = 0; i < g.components.size(); ++i)
    for (std::size_t j = 0; j < g.components.size(); ++j) {
      Subspace prod = subspace_product(a, g.components[i], g.components[j]);
      if (prod.dim() == 0) continue;
      GradeLabel target = g.group.add(g.labels[i], g.labels[j]);
      int t = g.component_of(target);
      if (t < 0)
        rep.fail("product of components " + g.group.str(g.labels[i]) + " and " +
                 g.group.str(g.labels[j]) +
                 " is nonzero but the label sum is outside the support");
      else if (!g.components[t].contains(prod))
        rep.fail("product of components " + g.group.str(g.labels[i]) + " and " +
                 g.group.str(g.labels[j]) + " leaks outside component " +
                 g.group.str(target));
    }
  if (!rep.ok) return rep;

  // projections: columns of t are the component bases in order
  Matrix t(a.field, n, n);
  std::vector<int> block_of(n);
  {
    int col = 0;
    for (std::size_t i = 0; i < g.components.size(); ++i)
      for (const Vec& v : g.components[i].basis()) {
        t.set_col(col, v);
        block_of[col] = int(i);
        ++col;
      }
  }
  auto tinv = inverse(t);
  if (!tinv) throw InternalError("grading basis change is singular");
  g.projections.clear();
  for (std::size_t k = 0; k < g.components.size(); ++k) {
    Matrix p(a.field, n, n);
    for (int c = 0; c < n; ++c) {
      if (block_of[c] != int(k)) continue;
      for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc)
          p.at(r, cc) = p.at(r, cc) + t.at(r, c) * tinv->at(c, cc);
    }
    g.projections.push_back(std::move(p));
  }
  Matrix check(a.field, n, n);
  for (const Matrix& p : g.projections) check = check + p;
  if (!(check == Matrix::identity(a.field, n)))
    throw InternalError("grading projections do not sum to the identity");
  return rep;
}

ValidationReport validate_group_action(const Algebra& a, GroupAction& act,
                                       std::size_t max_order) {
  ValidationReport rep;
  const int n = int(a.dim);
  for (std::size_t i = 0; i < act.generators.size(); ++i) {
    GroupElem& e = act.generators[i];
    if (e.name.empty()) e.name = "g" + std::to_string(i);
    if (e.mat.rows() != n || e.mat.cols() != n) {
      rep.fail("generator " + e.name + " has the wrong shape");
      return rep;
    }
    if (!inverse(e.mat))
      rep.fail("generator " + e.name + " is singular");
    else if (!is_morphism(a, e.mat, e.anti))
      rep.fail("generator " + e.name + (e.anti
                   ? " is not an antiautomorphism"
                   : " is not an automorphism"));
  }
  if (!rep.ok) return rep;

  act.elements.clear();
  std::map<std::string, std::size_t> seen;
  auto push = [&](Matrix m, bool anti, std::string name) -> bool {
    std::string key = matrix_key(m, anti);
    if (seen.count(key)) return false;
    seen[key] = act.elements.size();
    act.elements.push_back(GroupElem{std::move(m), anti, std::move(name)});
    return true;
  };
  push(Matrix::identity(a.field, n), false, "1");
  for (const GroupElem& e : act.generators) push(e.mat, e.anti, e.name);
  std::size_t next = 0;
  while (next < act.elements.size()) {
    // copy, since push may reallocate the element vector
    GroupElem w = act.elements[next++];
    for (const GroupElem& g : act.generators) {
      if (act.elements.size() > max_order)
        throw BudgetError("group closure exceeds " +
                          std::to_string(max_order) + " elements");
      push(w.mat * g.mat, w.anti != g.anti,
           "w" + std::to_string(act.elements.size()));
    }
  }
  if (act.elements.size() > max_order)
    throw BudgetError("group closure exceeds " + std::to_string(max_order) +
                      " elements");
  // composites of certified (anti)automorphisms stay certified; recheck
  // everything when the group is small enough for it to be cheap
  if (act.elements.size() <= 64)
    for (const GroupElem& e : act.elements)
      if (!is_morphism(a, e.mat, e.anti))
        throw InternalError("group closure produced a non-morphism");
  return rep;
}

ValidationReport validate_derivations(const Algebra& a, DerivationAction& d) {
  ValidationReport rep;
  const int n = int(a.dim);
  if (d.names.size() < d.generators.size())
    for (std::size_t i = d.names.size(); i < d.generators.size(); ++i)
      d.names.push_back("d" + std::to_string(i));
  for (std::size_t i = 0; i < d.generators.size(); ++i) {
    const Matrix& m = d.generators[i];
    if (m.rows() != n || m.cols() != n) {
      rep.fail("derivation " + d.names[i] + " has the wrong shape");
      return rep;
    }
    if (!is_derivation(a, m))
      rep.fail("derivation " + d.names[i] + " violates the Leibniz rule");
  }
  return rep;
}

Scalar scalar_pow(const Scalar& s, long k) {
  Scalar out = Scalar::one(s.field_data());
  Scalar base = s;
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

}  // namespace

ValidationReport validate_structure(const Algebra& a, Structure& s,
                                    std::size_t max_group_order) {
  if (auto* g = std::get_if<Grading>(&s)) return validate_grading(a, *g);
  if (auto* act = std::get_if<GroupAction>(&s))
    return validate_group_action(a, *act, max_group_order);
  if (auto* d = std::get_if<DerivationAction>(&s))
    return validate_derivations(a, *d);
  return ValidationReport{};
}

std::vector<Matrix> structure_operators(const Algebra&, const Structure& s) {
  std::vector<Matrix> out;
  if (const auto* g = std::get_if<Grading>(&s)) {
    if (g->projections.empty() && !g->components.empty())
      throw InternalError("grading used before validation");
    out = g->projections;
  } else if (const auto* act = std::get_if<GroupAction>(&s)) {
    if (act->elements.empty() && !act->generators.empty())
      throw InternalError("group action used before validation");
    for (const GroupElem& e : act->elements) out.push_back(e.mat);
  } else if (const auto* d = std::get_if<DerivationAction>(&s)) {
    out = d->generators;
  }
  return out;
}

bool subspace_invariant(const Algebra& a, const Structure& s,
                        const Subspace& u) {
  for (const Matrix& m : structure_operators(a, s))
    for (const Vec& v : u.basis())
      if (!u.contains(m.apply(v))) return false;
  return true;
}

OperatorEnvelope operator_envelope(const Algebra& a, const Structure& s) {
  const int n = int(a.dim);
  OperatorEnvelope env;
  if (std::holds_alternative<TrivialStructure>(s)) {
    env.basis.push_back(Matrix::identity(a.field, n));
    env.labels.push_back("1");
    env.includes_identity = true;
    return env;
  }
  if (const auto* g = std::get_if<Grading>(&s)) {
    if (g->projections.empty())
      throw InternalError("grading used before validation");
    for (std::size_t i = 0; i < g->projections.size(); ++i) {
      env.basis.push_back(g->projections[i]);
      env.labels.push_back("pi" + g->group.str(g->labels[i]));
    }
    env.includes_identity = true;  // the projections sum to the identity
    return env;
  }
  if (const auto* act = std::get_if<GroupAction>(&s)) {
    if (act->elements.empty())
      throw InternalError("group action used before validation");
    EchelonBasis eb(a.field, n * n);
    for (const GroupElem& e : act->elements)
      if (eb.insert(e.mat.flatten())) {
        env.basis.push_back(e.mat);
        env.labels.push_back(e.name);
      }
    env.includes_identity = true;  // the identity is a group element
    return env;
  }
  const auto& d = std::get<DerivationAction>(s);
  EchelonBasis eb(a.field, n * n);
  Matrix id = Matrix::identity(a.field, n);
  eb.insert(id.flatten());
  env.basis.push_back(id);
  env.labels.push_back("1");
  std::vector<Matrix> frontier;
  for (const Matrix& g : d.generators)
    if (eb.insert(g.flatten())) {
      env.basis.push_back(g);
      frontier.push_back(g);
    }
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const Matrix& w : frontier)
      for (const Matrix& g : d.generators) {
        Matrix p = g * w;
        if (eb.insert(p.flatten())) {
          env.basis.push_back(p);
          next.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  env.labels.assign(env.basis.size(), "");
  for (std::size_t i = 1; i < env.basis.size(); ++i)
    env.labels[i] = "b" + std::to_string(i);
  env.labels[0] = "1";
  env.includes_identity = true;
  return env;
}

GroupAction dual_action_from_grading(const Algebra& a, const Grading& g) {
  if (g.projections.empty())
    throw InternalError("grading used before validation");
  const auto& grp = g.group;
  for (const GradeLabel& l : g.labels)
    for (int i = 0; i < grp.free_rank; ++i)
      if (l.v[i] != 0)
        throw ValidationError(
            "dual action needs a finite support group, but label " +
            grp.str(l) + " has a nonzero free coordinate");

  // the subgroup S generated by the torsion parts of the support
  const std::size_t tdim = grp.torsion.size();
  auto tor = [&](const GradeLabel& l) {
    return std::vector<long>(l.v.begin() + grp.free_rank, l.v.end());
  };
  auto tor_add = [&](const std::vector<long>& x, const std::vector<long>& y) {
    std::vector<long> out(tdim);
    for (std::size_t i = 0; i < tdim; ++i)
      out[i] = (x[i] + y[i]) % grp.torsion[i];
    return out;
  };
  std::vector<std::vector<long>> gens;
  for (const GradeLabel& l : g.labels) {
    auto t = tor(l);
    if (std::find(gens.begin(), gens.end(), t) == gens.end())
      gens.push_back(t);
  }
  std::map<std::vector<long>, std::size_t> index_of;
  std::vector<std::vector<long>> elems;
  elems.push_back(std::vector<long>(tdim, 0));
  index_of[elems[0]] = 0;
  for (std::size_t next = 0; next < elems.size(); ++next) {
    auto cur = elems[next];
    for (const auto& t : gens) {
      auto s = tor_add(cur, t);
      if (!index_of.count(s)) {
        if (elems.size() >= 1024)
          throw BudgetError("grading support group exceeds 1024 elements");
        index_of[s] = elems.size();
        elems.push_back(s);
      }
    }
  }
  auto order_of = [&](const std::vector<long>& v) {
    long o = 1;
    for (std::size_t i = 0; i < tdim; ++i) {
      long m = grp.torsion[i];
      long d = std::gcd(m, v[i]);
      o = std::lcm(o, m / d);
    }
    return o;
  };
  long exponent = 1;
  for (const auto& s : elems) exponent = std::lcm(exponent, order_of(s));

  const long m = long(a.field->conductor);
  const long root_order = (m % 2 == 0) ? m : 2 * m;
  if (root_order % exponent != 0)
    throw ValidationError(
        "dual action needs a primitive root of unity of order " +
        std::to_string(exponent) + ", but conductor " + std::to_string(m) +
        " only provides order " + std::to_string(root_order) +
        "; use a base field conductor divisible by " +
        std::to_string(exponent));
  Scalar gen_root = Scalar::zeta(a.field);
  if (m % 2 != 0) gen_root = Scalar::zero(a.field) - gen_root;
  Scalar omega = scalar_pow(gen_root, root_order / exponent);

  // candidate values per generator are roots of unity of compatible order
  std::vector<std::vector<Scalar>> cand(gens.size());
  std::size_t tuples = 1;
  for (std::size_t t = 0; t < gens.size(); ++t) {
    long o = order_of(gens[t]);
    for (long j = 0; j < o; ++j)
      cand[t].push_back(scalar_pow(omega, (exponent / o) * j));
    tuples *= std::size_t(o);
    if (tuples > 4096)
      throw BudgetError("character search space exceeds 4096 candidates");
  }

  std::vector<std::vector<Scalar>> characters;  // values indexed like elems
  std::map<std::string, bool> char_seen;
  std::vector<std::size_t> odo(gens.size(), 0);
  for (std::size_t step = 0; step < tuples; ++step) {
    // decode the odometer
    {
      std::size_t rem = step;
      for (std::size_t t = 0; t < gens.size(); ++t) {
        odo[t] = rem % cand[t].size();
        rem /= cand[t].size();
      }
    }
    std::vector<Scalar> val(elems.size(), Scalar::zero(a.field));
    std::vector<bool> known(elems.size(), false);
    val[0] = Scalar::one(a.field);
    known[0] = true;
    std::vector<std::size_t> queue = {0};
    bool ok = true;
    while (ok && !queue.empty()) {
      std::size_t cur = queue.back();
      queue.pop_back();
      for (std::size_t t = 0; ok && t < gens.size(); ++t) {
        std::size_t nxt = index_of[tor_add(elems[cur], gens[t])];
        Scalar v = val[cur] * cand[t][odo[t]];
        if (!known[nxt]) {
          known[nxt] = true;
          val[nxt] = v;
          queue.push_back(nxt);
        } else if (!(val[nxt] == v)) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (std::size_t x = 0; ok && x < elems.size(); ++x)
      for (std::size_t y = x; ok && y < elems.size(); ++y) {
        std::size_t z = index_of[tor_add(elems[x], elems[y])];
        if (!(val[z] == val[x] * val[y])) ok = false;
      }
    if (!ok) continue;
    std::ostringstream key;
    for (const Scalar& v : val) key << v.str() << ";";
    if (char_seen.count(key.str())) continue;
    char_seen[key.str()] = true;
    characters.push_back(std::move(val));
  }
  if (characters.size() != elems.size())
    throw InternalError("character count does not match the support group");

  GroupAction out;
  const int n = int(a.dim);
  for (std::size_t c = 0; c < characters.size(); ++c) {
    Matrix mat(a.field, n, n);
    for (std::size_t i = 0; i < g.labels.size(); ++i) {
      std::size_t idx = index_of[tor(g.labels[i])];
      mat = mat + g.projections[i].scaled(characters[c][idx]);
    }
    out.generators.push_back(
        GroupElem{std::move(mat), false, "chi" + std::to_string(c)});
  }
  return out;
}

namespace {

Matrix transport_op(const Matrix& m, const SubAlgebra& sub) {
  const int d = sub.alg.dim;
  Matrix out(sub.alg.field, d, d);
  for (int j = 0; j < d; ++j) {
    Vec img = m.apply(sub.space.basis()[j]);
    auto coords = sub.space.coordinates(img);
    if (!coords)
      throw ValidationError("structure does not preserve the subalgebra");
    out.set_col(j, *coords);
  }
  return out;
}

}  // namespace

Structure restrict_structure(const Algebra& a, const Structure& s,
                             const SubAlgebra& sub) {
  if (!subspace_invariant(a, s, sub.space))
    throw ValidationError("structure does not preserve the subalgebra");
  Structure out;
  if (std::holds_alternative<TrivialStructure>(s)) {
    out = TrivialStructure{};
  } else if (const auto* g = std::get_if<Grading>(&s)) {
    Grading ng;
    ng.group = g->group;
    for (std::size_t i = 0; i < g->components.size(); ++i) {
      Subspace meet = g->components[i].intersect(sub.space);
      if (meet.dim() == 0) continue;
      EchelonBasis eb(a.field, sub.alg.dim);
      for (const Vec& v : meet.basis()) {
        auto coords = sub.space.coordinates(v);
        if (!coords) throw InternalError("component escapes the subalgebra");
        eb.insert(*coords);
      }
      ng.labels.push_back(g->labels[i]);
      ng.components.push_back(eb.to_subspace());
    }
    out = std::move(ng);
  } else if (const auto* act = std::get_if<GroupAction>(&s)) {
    GroupAction na;
    for (const GroupElem& e : act->generators)
      na.generators.push_back(
          GroupElem{transport_op(e.mat, sub), e.anti, e.name});
    out = std::move(na);
  } else {
    const auto& d = std::get<DerivationAction>(s);
    DerivationAction nd;
    nd.names = d.names;
    for (const Matrix& m : d.generators)
      nd.generators.push_back(transport_op(m, sub));
    out = std::move(nd);
  }
  auto rep = validate_structure(sub.alg, out);
  if (!rep.ok)
    throw InternalError("restricted structure failed validation: " +
                        (rep.problems.empty() ? std::string("?")
                                              : rep.problems.front()));
  return out;
}

Structure quotient_structure(const Algebra& a, const Structure& s,
                             const QuotientAlgebra& q) {
  if (!subspace_invariant(a, s, q.ideal))
    throw ValidationError("structure does not preserve the ideal");
  Structure out;
  if (std::holds_alternative<TrivialStructure>(s)) {
    out = TrivialStructure{};
  } else if (const auto* g = std::get_if<Grading>(&s)) {
    Grading ng;
    ng.group = g->group;
    for (std::size_t i = 0; i < g->components.size(); ++i) {
      EchelonBasis eb(a.field, q.alg.dim);
      for (const Vec& v : g->components[i].basis())
        eb.insert(q.proj.apply(v));
      Subspace img = eb.to_subspace();
      if (img.dim() == 0) continue;
      ng.labels.push_back(g->labels[i]);
      ng.components.push_back(img);
    }
    out = std::move(ng);
  } else if (const auto* act = std::get_if<GroupAction>(&s)) {
    GroupAction na;
    for (const GroupElem& e : act->generators)
      na.generators.push_back(
          GroupElem{q.proj * e.mat * q.sect, e.anti, e.name});
    out = std::move(na);
  } else {
    const auto& d = std::get<DerivationAction>(s);
    DerivationAction nd;
    nd.names = d.names;
    for (const Matrix& m : d.generators)
      nd.generators.push_back(q.proj * m * q.sect);
    out = std::move(nd);
  }
  auto rep = validate_structure(q.alg, out);
  if (!rep.ok)
    throw InternalError("quotient structure failed validation: " +
                        (rep.problems.empty() ? std::string("?")
                                              : rep.problems.front()));
  return out;
}

}  // namespace pialg
