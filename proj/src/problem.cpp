#include "problem.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"

namespace pialg {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, std::string("missing ") + key);
  return j.at(key);
}

std::string scalar_text(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(path, "scalars must be exact strings like \"1/2\" or \"1+z^2\", or integers");
}

Scalar parse_scalar_at(const FieldData* f, const json& j,
                       const std::string& path) {
  try {
    return parse_scalar(f, scalar_text(j, path));
  } catch (const std::runtime_error& e) {
    fail(path, e.what());
  }
}

Vec parse_vec(const FieldData* f, const json& j, std::size_t len,
              const std::string& path) {
  if (!j.is_array() || j.size() != len)
    fail(path, "expected an array of " + std::to_string(len) + " scalars");
  Vec v;
  for (std::size_t i = 0; i < len; ++i)
    v.push_back(parse_scalar_at(f, j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Matrix parse_matrix(const FieldData* f, const json& j, int rows, int cols,
                    const std::string& path) {
  if (!j.is_array() || int(j.size()) != rows)
    fail(path, "expected " + std::to_string(rows) + " rows");
  Matrix m(f, rows, cols);
  for (int r = 0; r < rows; ++r) {
    Vec row = parse_vec(f, j[r], cols, path + "[" + std::to_string(r) + "]");
    m.set_row(r, row);
  }
  return m;
}

GradeLabel parse_label(const json& j, std::size_t len,
                       const std::string& path) {
  if (!j.is_array() || j.size() != len)
    fail(path, "label must list " + std::to_string(len) + " integers");
  GradeLabel g;
  for (const auto& e : j) {
    if (!e.is_number_integer()) fail(path, "label entries must be integers");
    g.v.push_back(e.get<long>());
  }
  return g;
}

Structure parse_structure(const Algebra& a, const json& j,
                          const std::string& path) {
  std::string type = need(j, "type", path).get<std::string>();
  const FieldData* f = a.field;
  int n = int(a.dim);
  if (type == "grading") {
    Grading g;
    if (j.contains("free_rank")) g.group.free_rank = j.at("free_rank").get<int>();
    if (j.contains("torsion"))
      for (const auto& t : j.at("torsion")) g.group.torsion.push_back(t.get<long>());
    const json& comps = need(j, "components", path);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::string cp = path + ".components[" + std::to_string(i) + "]";
      g.labels.push_back(
          parse_label(need(comps[i], "label", cp), g.group.label_len(), cp));
      std::vector<Vec> basis;
      for (const auto& bv : need(comps[i], "basis", cp))
        basis.push_back(parse_vec(f, bv, a.dim, cp + ".basis"));
      g.components.push_back(Subspace::span(f, n, basis));
    }
    return g;
  }
  if (type == "group_action") {
    GroupAction act;
    for (const auto& gen : need(j, "generators", path)) {
      std::string gp = path + ".generators";
      GroupElem e;
      e.name = need(gen, "name", gp).get<std::string>();
      e.anti = gen.contains("anti") && gen.at("anti").get<bool>();
      e.mat = parse_matrix(f, need(gen, "matrix", gp), n, n, gp + "." + e.name);
      act.generators.push_back(std::move(e));
    }
    return act;
  }
  if (type == "derivation_action") {
    DerivationAction act;
    for (const auto& gen : need(j, "generators", path)) {
      std::string gp = path + ".generators";
      act.names.push_back(need(gen, "name", gp).get<std::string>());
      act.generators.push_back(parse_matrix(f, need(gen, "matrix", gp), n, n,
                                            gp + "." + act.names.back()));
    }
    return act;
  }
  if (type == "trivial") return TrivialStructure{};
  fail(path, "unknown structure type '" + type + "'");
}

const Matrix* operator_by_name(const Structure& s, const std::string& name) {
  if (const auto* act = std::get_if<GroupAction>(&s)) {
    for (const GroupElem& e : act->elements)
      if (e.name == name) return &e.mat;
    return nullptr;
  }
  if (const auto* d = std::get_if<DerivationAction>(&s)) {
    for (std::size_t i = 0; i < d->names.size(); ++i)
      if (d->names[i] == name) return &d->generators[i];
    return nullptr;
  }
  return nullptr;
}

NamedPolynomial parse_polynomial(const ProblemFile& pf, const json& j,
                                 const std::string& path) {
  NamedPolynomial np;
  const FieldData* f = pf.field;
  np.poly.n = need(j, "n", path).get<int>();
  if (np.poly.n < 1) fail(path, "n must be at least 1");

  const Structure* s = nullptr;
  if (j.contains("structure")) {
    np.structure = j.at("structure").get<std::string>();
    s = find_structure(pf, np.structure);
    if (!s) fail(path, "unknown structure '" + np.structure + "'");
  }

  if (j.contains("labels")) {
    if (!s || !std::holds_alternative<Grading>(*s))
      fail(path, "labels need a grading structure");
    const Grading& g = std::get<Grading>(*s);
    const json& labels = j.at("labels");
    if (int(labels.size()) != np.poly.n)
      fail(path, "one label per variable is required");
    for (const auto& l : labels)
      np.poly.var_labels.push_back(
          parse_label(l, g.group.label_len(), path + ".labels"));
  }

  for (const auto& term : need(j, "terms", path)) {
    std::string tp = path + ".terms";
    Scalar coeff = parse_scalar_at(f, need(term, "coeff", tp), tp + ".coeff");
    DecoratedMonomial mon;
    const json& vars = need(term, "vars", tp);
    if (int(vars.size()) != np.poly.n)
      fail(tp, "vars must list every variable once");
    for (const auto& v : vars) mon.order.push_back(v.get<int>());
    mon.decorations.assign(np.poly.n, -1);
    if (term.contains("decor")) {
      const json& decor = term.at("decor");
      if (int(decor.size()) != np.poly.n)
        fail(tp, "decor must have one entry per position");
      if (!np.poly.var_labels.empty())
        fail(tp, "graded polynomials carry labels, not decor");
      for (int p = 0; p < np.poly.n; ++p) {
        if (decor[p].is_null()) continue;
        std::string name = decor[p].get<std::string>();
        if (!s) fail(tp, "decorated polynomials must name a structure");
        const Matrix* op = operator_by_name(*s, name);
        if (!op)
          fail(tp, "structure '" + np.structure + "' has no operator '" +
                       name + "'");
        int idx = -1;
        for (std::size_t i = 0; i < np.op_names.size(); ++i)
          if (np.op_names[i] == name) idx = int(i);
        if (idx < 0) {
          idx = int(np.op_names.size());
          np.op_names.push_back(name);
          np.poly.ops.push_back(*op);
        }
        mon.decorations[p] = idx;
      }
    }
    np.poly.terms.push_back({std::move(coeff), std::move(mon)});
  }
  if (np.poly.terms.empty()) fail(path, "polynomial has no terms");
  return np;
}

std::vector<LieChain> parse_chain_list(const ProblemFile& pf, const json& j,
                                       const std::string& path) {
  std::vector<LieChain> out;
  const FieldData* f = pf.field;
  int n = int(pf.algebra.dim);
  for (std::size_t c = 0; c < j.size(); ++c) {
    std::string cp = path + "[" + std::to_string(c) + "]";
    LieChain chain;
    for (const auto& stage : j[c]) {
      auto parse_space = [&](const char* key) {
        std::vector<Vec> vecs;
        for (const auto& v : need(stage, key, cp))
          vecs.push_back(parse_vec(f, v, pf.algebra.dim, cp));
        return Subspace::span(f, n, vecs);
      };
      chain.upper.push_back(parse_space("upper"));
      chain.lower.push_back(parse_space("lower"));
    }
    out.push_back(std::move(chain));
  }
  return out;
}

}  // namespace

ProblemFile parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("problem file is not valid JSON: ") +
                          e.what());
  }

  ProblemFile pf;
  pf.canonical = doc.dump();

  long conductor = 1;
  if (doc.contains("field"))
    conductor = need(doc.at("field"), "conductor", "field").get<long>();
  pf.field = field(conductor);

  const json& alg = need(doc, "algebra", "problem");
  std::string kind = need(alg, "kind", "algebra").get<std::string>();
  if (kind != "associative" && kind != "lie")
    fail("algebra.kind", "must be \"associative\" or \"lie\"");
  std::vector<std::string> names;
  for (const auto& nm : need(alg, "basis_names", "algebra"))
    names.push_back(nm.get<std::string>());
  std::size_t dim = names.size();
  if (dim == 0) fail("algebra.basis_names", "algebra must have dimension > 0");
  if (alg.contains("dim") && alg.at("dim").get<std::size_t>() != dim)
    fail("algebra.dim", "disagrees with basis_names");

  const json& table = need(alg, "table", "algebra");
  if (!table.is_array() || table.size() != dim)
    fail("algebra.table", "expected " + std::to_string(dim) + " rows");
  std::vector<Scalar> flat;
  flat.reserve(dim * dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = table[i];
    if (!row.is_array() || row.size() != dim)
      fail("algebra.table[" + std::to_string(i) + "]",
           "expected " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) {
      Vec prod = parse_vec(pf.field, row[j], dim,
                           "algebra.table[" + std::to_string(i) + "][" +
                               std::to_string(j) + "]");
      for (std::size_t k = 0; k < dim; ++k) flat.push_back(prod[k]);
    }
  }
  pf.algebra = make_algebra(
      pf.field, kind == "lie" ? AlgebraKind::Lie : AlgebraKind::Associative,
      names, std::move(flat));
  ValidationReport ar = validate_algebra(pf.algebra);
  if (!ar.ok) fail("algebra", ar.problems.front());

  if (doc.contains("structures")) {
    for (const auto& [name, body] : doc.at("structures").items()) {
      Structure s =
          parse_structure(pf.algebra, body, "structures." + name);
      ValidationReport sr = validate_structure(pf.algebra, s);
      if (!sr.ok) fail("structures." + name, sr.problems.front());
      pf.structures.push_back({name, std::move(s)});
    }
  }

  if (doc.contains("polynomials"))
    for (const auto& [name, body] : doc.at("polynomials").items())
      pf.polynomials.push_back(
          {name, parse_polynomial(pf, body, "polynomials." + name)});

  if (doc.contains("chains"))
    for (const auto& [name, body] : doc.at("chains").items())
      pf.chains.push_back(
          {name, parse_chain_list(pf, body, "chains." + name)});

  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

const Structure* find_structure(const ProblemFile& p,
                                const std::string& name) {
  for (const auto& [n, s] : p.structures)
    if (n == name) return &s;
  return nullptr;
}

const NamedPolynomial* find_polynomial(const ProblemFile& p,
                                       const std::string& name) {
  for (const auto& [n, q] : p.polynomials)
    if (n == name) return &q;
  return nullptr;
}

const std::vector<LieChain>* find_chains(const ProblemFile& p,
                                         const std::string& name) {
  for (const auto& [n, c] : p.chains)
    if (n == name) return &c;
  return nullptr;
}

namespace {

ordered_json render_vec(const Vec& v) {
  ordered_json out = ordered_json::array();
  for (const Scalar& c : v) out.push_back(c.str());
  return out;
}

ordered_json render_matrix(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) out.push_back(render_vec(m.row(r)));
  return out;
}

ordered_json render_label(const GradeLabel& g) {
  ordered_json out = ordered_json::array();
  for (long x : g.v) out.push_back(x);
  return out;
}

ordered_json render_structure(const Structure& s) {
  ordered_json out;
  if (std::holds_alternative<TrivialStructure>(s)) {
    out["type"] = "trivial";
    return out;
  }
  if (const auto* g = std::get_if<Grading>(&s)) {
    out["type"] = "grading";
    out["free_rank"] = g->group.free_rank;
    out["torsion"] = g->group.torsion;
    ordered_json comps = ordered_json::array();
    for (std::size_t i = 0; i < g->labels.size(); ++i) {
      ordered_json c;
      c["label"] = render_label(g->labels[i]);
      ordered_json basis = ordered_json::array();
      for (const Vec& v : g->components[i].basis()) basis.push_back(render_vec(v));
      c["basis"] = basis;
      comps.push_back(c);
    }
    out["components"] = comps;
    return out;
  }
  if (const auto* act = std::get_if<GroupAction>(&s)) {
    out["type"] = "group_action";
    ordered_json gens = ordered_json::array();
    for (const GroupElem& e : act->generators) {
      ordered_json g2;
      g2["name"] = e.name;
      g2["anti"] = e.anti;
      g2["matrix"] = render_matrix(e.mat);
      gens.push_back(g2);
    }
    out["generators"] = gens;
    return out;
  }
  const auto& d = std::get<DerivationAction>(s);
  out["type"] = "derivation_action";
  ordered_json gens = ordered_json::array();
  for (std::size_t i = 0; i < d.generators.size(); ++i) {
    ordered_json g2;
    g2["name"] = i < d.names.size() ? d.names[i] : "d" + std::to_string(i);
    g2["matrix"] = render_matrix(d.generators[i]);
    gens.push_back(g2);
  }
  out["generators"] = gens;
  return out;
}

}  // namespace

std::string render_problem(const ProblemFile& p) {
  ordered_json doc;
  doc["field"]["conductor"] = p.field->conductor;
  ordered_json& alg = doc["algebra"];
  alg["kind"] = p.algebra.kind == AlgebraKind::Lie ? "lie" : "associative";
  alg["basis_names"] = p.algebra.basis_names;
  ordered_json table = ordered_json::array();
  for (std::size_t i = 0; i < p.algebra.dim; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < p.algebra.dim; ++j)
      row.push_back(render_vec(p.algebra.basis_product(i, j)));
    table.push_back(row);
  }
  alg["table"] = table;

  if (!p.structures.empty()) {
    ordered_json st;
    for (const auto& [name, s] : p.structures) st[name] = render_structure(s);
    doc["structures"] = st;
  }
  if (!p.polynomials.empty()) {
    ordered_json ps;
    for (const auto& [name, np] : p.polynomials) {
      ordered_json pj;
      pj["n"] = np.poly.n;
      if (!np.structure.empty()) pj["structure"] = np.structure;
      if (!np.poly.var_labels.empty()) {
        ordered_json ls = ordered_json::array();
        for (const GradeLabel& l : np.poly.var_labels)
          ls.push_back(render_label(l));
        pj["labels"] = ls;
      }
      ordered_json terms = ordered_json::array();
      for (const auto& [coeff, mon] : np.poly.terms) {
        ordered_json t;
        t["coeff"] = coeff.str();
        t["vars"] = mon.order;
        bool decorated = false;
        for (int d : mon.decorations) decorated = decorated || d >= 0;
        if (decorated) {
          ordered_json ds = ordered_json::array();
          for (int d : mon.decorations) {
            if (d < 0)
              ds.push_back(nullptr);
            else
              ds.push_back(np.op_names[d]);
          }
          t["decor"] = ds;
        }
        terms.push_back(t);
      }
      pj["terms"] = terms;
      ps[name] = pj;
    }
    doc["polynomials"] = ps;
  }
  if (!p.chains.empty()) {
    ordered_json cs;
    for (const auto& [name, chains] : p.chains) {
      ordered_json list = ordered_json::array();
      for (const LieChain& ch : chains) {
        ordered_json stages = ordered_json::array();
        for (std::size_t i = 0; i < ch.upper.size(); ++i) {
          ordered_json st;
          ordered_json up = ordered_json::array();
          for (const Vec& v : ch.upper[i].basis()) up.push_back(render_vec(v));
          ordered_json lo = ordered_json::array();
          for (const Vec& v : ch.lower[i].basis()) lo.push_back(render_vec(v));
          st["upper"] = up;
          st["lower"] = lo;
          stages.push_back(st);
        }
        list.push_back(stages);
      }
      cs[name] = list;
    }
    doc["chains"] = cs;
  }
  return doc.dump(2);
}

}  // namespace pialg
