#include "run.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "cochar.hpp"
#include "codim.hpp"
#include "decompose.hpp"
#include "errors.hpp"
#include "exponent.hpp"
#include "json.hpp"

namespace pialg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

const Structure& resolve_structure(const ProblemFile& pf,
                                   const std::string& name) {
  static const Structure trivial = TrivialStructure{};
  if (name.empty()) return trivial;
  const Structure* s = find_structure(pf, name);
  if (!s) throw ValidationError("unknown structure '" + name + "'");
  return *s;
}

std::string structure_type_name(const Structure& s) {
  if (std::holds_alternative<Grading>(s)) return "grading";
  if (std::holds_alternative<GroupAction>(s)) return "group_action";
  if (std::holds_alternative<DerivationAction>(s)) return "derivation_action";
  return "trivial";
}

/// "e11 - 2*e12" style rendering against the basis names
std::string combo(const Algebra& a, const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (v[i].is_one())
      out += a.basis_names[i];
    else
      out += "(" + v[i].str() + ")*" + a.basis_names[i];
  }
  return out.empty() ? "0" : out;
}

ordered_json render_vec(const Vec& v) {
  ordered_json out = ordered_json::array();
  for (const Scalar& c : v) out.push_back(c.str());
  return out;
}

ordered_json render_subspace(const Algebra& a, const Subspace& s) {
  ordered_json out;
  out["dim"] = s.dim();
  ordered_json basis = ordered_json::array();
  ordered_json pretty = ordered_json::array();
  for (const Vec& v : s.basis()) {
    basis.push_back(render_vec(v));
    pretty.push_back(combo(a, v));
  }
  out["basis"] = basis;
  out["elements"] = pretty;
  return out;
}

ordered_json render_partition(const Partition& p) {
  ordered_json out = ordered_json::array();
  for (int x : p.parts) out.push_back(x);
  return out;
}

ordered_json render_codim(const CodimReport& r) {
  ordered_json out;
  out["n"] = r.n;
  out["regime"] = codim_regime_name(r.regime);
  out["value"] = r.value;
  out["rows"] = r.rows;
  out["cols"] = r.cols;
  if (!r.blocks.empty()) {
    ordered_json blocks = ordered_json::array();
    for (const LabelBlock& b : r.blocks) {
      ordered_json bj;
      ordered_json labels = ordered_json::array();
      for (const GradeLabel& l : b.labels) {
        ordered_json lj = ordered_json::array();
        for (long x : l.v) lj.push_back(x);
        labels.push_back(lj);
      }
      bj["labels"] = labels;
      bj["rows"] = b.rows;
      bj["cols"] = b.cols;
      bj["rank"] = b.rank;
      blocks.push_back(bj);
    }
    out["blocks"] = blocks;
  }
  if (!r.operator_labels.empty()) out["operator_labels"] = r.operator_labels;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::string label_text(const GradeLabel& l) {
  std::string out = "[";
  for (std::size_t i = 0; i < l.v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(l.v[i]);
  }
  return out + "]";
}

std::string block_label_text(const LabelBlock& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.labels.size(); ++i) {
    if (i) out += ",";
    out += label_text(b.labels[i]);
  }
  return out + ")";
}

ordered_json render_exponent(const ExponentReport& r, const Algebra& a) {
  ordered_json out;
  out["d"] = r.d;
  out["witness"] = r.witness;
  out["witness_dims"] = r.witness_dims;
  ordered_json comps = ordered_json::array();
  for (const Subspace& c : r.components_used)
    comps.push_back(render_subspace(a, c));
  out["components"] = comps;
  out["certified"] = r.certified;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::string exponent_text(const ExponentReport& r) {
  std::ostringstream os;
  os << "exponent d = " << r.d;
  if (!r.witness.empty()) {
    os << "  (witness chain: components";
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      os << " " << r.witness[i] << "(dim " << r.witness_dims[i] << ")";
    os << ")";
  }
  if (!r.certified) os << "  [not certified over extensions]";
  return os.str();
}

ordered_json render_chain(const Algebra& a, const LieChain& c) {
  ordered_json out;
  out["verified"] = c.verified;
  out["absolutely"] = c.absolutely;
  out["value"] = c.value;
  out["depths"] = c.depths;
  ordered_json stages = ordered_json::array();
  for (std::size_t i = 0; i < c.upper.size(); ++i) {
    ordered_json st;
    st["upper"] = render_subspace(a, c.upper[i]);
    st["lower"] = render_subspace(a, c.lower[i]);
    if (i < c.complements.size())
      st["complement"] = render_subspace(a, c.complements[i]);
    stages.push_back(st);
  }
  out["stages"] = stages;
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

struct Dispatch {
  const ProblemFile& pf;
  const RunOptions& opts;
  ordered_json results;
  std::ostringstream text;
  std::vector<std::string> flags;

  const Algebra& a() const { return pf.algebra; }
  const Structure& structure() const {
    return resolve_structure(pf, opts.structure);
  }
  void need_n() const {
    if (opts.n < 1) throw ValidationError("this command requires --n N");
  }

  void validate();
  void radical_cmd();
  void splitting(bool full_decompose);
  void exponent_cmd();
  void lie_exponent_cmd();
  void codim_cmd();
  void codim_series_cmd();
  void check_identity();
  void cocharacter_cmd();
  void check_simple();
};

void Dispatch::validate() {
  ordered_json alg;
  alg["kind"] = a().kind == AlgebraKind::Lie ? "lie" : "associative";
  alg["dim"] = a().dim;
  alg["basis_names"] = a().basis_names;
  alg["valid"] = true;
  results["algebra"] = alg;
  ordered_json st = ordered_json::array();
  for (const auto& [name, s] : pf.structures) {
    ordered_json sj;
    sj["name"] = name;
    sj["type"] = structure_type_name(s);
    sj["valid"] = true;
    if (const auto* g = std::get_if<Grading>(&s))
      sj["components"] = g->labels.size();
    if (const auto* act = std::get_if<GroupAction>(&s)) {
      sj["group_order"] = act->elements.size();
      bool anti = false;
      for (const GroupElem& e : act->elements) anti = anti || e.anti;
      sj["has_antiautomorphisms"] = anti;
    }
    if (const auto* d = std::get_if<DerivationAction>(&s))
      sj["generators"] = d->generators.size();
    st.push_back(sj);
  }
  results["structures"] = st;
  ordered_json polys = ordered_json::array();
  for (const auto& [name, np] : pf.polynomials) {
    ordered_json pj;
    pj["name"] = name;
    pj["n"] = np.poly.n;
    pj["terms"] = np.poly.terms.size();
    polys.push_back(pj);
  }
  results["polynomials"] = polys;
  ordered_json chains = ordered_json::array();
  for (const auto& [name, list] : pf.chains) {
    ordered_json cj;
    cj["name"] = name;
    cj["count"] = list.size();
    chains.push_back(cj);
  }
  results["chains"] = chains;

  text << "valid: " << (a().kind == AlgebraKind::Lie ? "lie" : "associative")
       << " algebra of dimension " << a().dim;
  if (!pf.structures.empty()) {
    text << "; structures:";
    for (const auto& [name, s] : pf.structures)
      text << " " << name << "(" << structure_type_name(s) << ")";
  }
  if (!pf.polynomials.empty()) {
    text << "; polynomials:";
    for (const auto& [name, np] : pf.polynomials) text << " " << name;
  }
  text << "\n";
}

void Dispatch::radical_cmd() {
  RadicalReport r = radical_report(a());
  results["dim"] = r.radical.dim();
  results["nilpotency_index"] = r.nilpotency_index;
  results["method"] = r.method;
  results["radical"] = render_subspace(a(), r.radical);
  text << "radical dimension " << r.radical.dim() << ", nilpotency index "
       << r.nilpotency_index << " (" << r.method << ")\n";
  for (const Vec& v : r.radical.basis()) text << "  " << combo(a(), v) << "\n";
}

void Dispatch::splitting(bool full_decompose) {
  const Structure& s = structure();
  SplittingReport r = invariant_splitting(a(), s);
  results["radical"] = render_subspace(a(), r.radical);
  results["complement"] = render_subspace(a(), r.complement);
  results["stages"] = r.stages;
  results["method"] = r.method;
  text << (a().kind == AlgebraKind::Lie ? "Levi subalgebra"
                                        : "Wedderburn-Malcev complement")
       << " of dimension " << r.complement.dim() << " over a radical of"
       << " dimension " << r.radical.dim() << " (" << r.stages
       << " stage(s))\n";
  for (const Vec& v : r.complement.basis())
    text << "  " << combo(a(), v) << "\n";

  if (!full_decompose) return;
  if (r.complement.dim() == 0) {
    results["components"] = ordered_json::array();
    text << "nilpotent algebra: no semisimple components\n";
    return;
  }
  SubAlgebra sub = subalgebra_on(a(), r.complement);
  Structure rs = restrict_structure(a(), s, sub);
  InvariantDecomposition dec = invariant_simple_decomposition(sub.alg, rs);
  ordered_json comps = ordered_json::array();
  text << "invariant-simple components:\n";
  for (const InvariantComponent& c : dec.components) {
    Subspace ambient = embed_subspace(sub, c.space);
    ordered_json cj = render_subspace(a(), ambient);
    cj["certified_minimal"] = c.certified_minimal;
    ordered_json pieces = ordered_json::array();
    for (int pi : c.piece_indices) {
      const SimplePiece& p = dec.underlying.pieces[pi];
      ordered_json pj;
      pj["dim"] = p.space.dim();
      pj["certified_simple"] = p.certified_simple;
      pj["centroid_dim"] = p.centroid_dim;
      if (!p.note.empty()) pj["note"] = p.note;
      pieces.push_back(pj);
    }
    cj["pieces"] = pieces;
    comps.push_back(cj);
    text << "  dim " << ambient.dim()
         << (c.certified_minimal ? "" : "  [minimality not certified]")
         << ": ";
    bool first = true;
    for (const Vec& v : ambient.basis()) {
      if (!first) text << ", ";
      text << combo(a(), v);
      first = false;
    }
    text << "\n";
  }
  results["components"] = comps;
  results["complete"] = dec.complete;
}

void Dispatch::exponent_cmd() {
  if (a().kind == AlgebraKind::Lie)
    throw ValidationError("exponent handles associative algebras; "
                          "use lie-exponent for Lie algebras");
  flags.push_back("distinct-index reading of the product chain formula");
  ExponentReport r = associative_exponent(a(), structure());
  results = render_exponent(r, a());
  text << exponent_text(r) << "\n";
  if (!r.note.empty()) text << "note: " << r.note << "\n";
}

void Dispatch::lie_exponent_cmd() {
  if (a().kind != AlgebraKind::Lie)
    throw ValidationError("lie-exponent needs a lie algebra");
  flags.push_back("module complements verified for one equivariant choice");
  std::vector<LieChain> supplied;
  if (!opts.chains.empty()) {
    const auto* c = find_chains(pf, opts.chains);
    if (!c) throw ValidationError("unknown chain list '" + opts.chains + "'");
    supplied = *c;
  }
  LieExponentReport r = lie_exponent_from_chains(a(), structure(), supplied);
  results["exponent"] = render_exponent(r.report, a());
  results["best_chain"] = r.best_chain;
  ordered_json chains = ordered_json::array();
  for (const LieChain& c : r.chains) chains.push_back(render_chain(a(), c));
  results["chains"] = chains;
  text << exponent_text(r.report) << "\n";
  for (std::size_t i = 0; i < r.chains.size(); ++i) {
    const LieChain& c = r.chains[i];
    text << "  chain " << i << ": "
         << (c.verified ? "verified, value " + std::to_string(c.value)
                        : "not verified");
    if (!c.note.empty()) text << " (" << c.note << ")";
    text << "\n";
  }
}

void Dispatch::codim_cmd() {
  need_n();
  CodimReport r;
  if (opts.dualize) {
    const Structure& s = structure();
    const auto* g = std::get_if<Grading>(&s);
    if (!g) throw ValidationError("--dualize needs a grading structure");
    r = codim_via_dual_action(a(), *g, opts.n);
    flags.push_back("graded codimension computed through the dual action");
  } else {
    r = codim(a(), structure(), opts.n);
  }
  results = render_codim(r);
  text << "c_" << r.n << " = " << r.value << "  (" << codim_regime_name(r.regime)
       << " regime, " << r.rows << " rows x " << r.cols << " cols)\n";
  for (const LabelBlock& b : r.blocks)
    text << "  block " << block_label_text(b) << ": rank " << b.rank << " of "
         << b.rows << " x " << b.cols << "\n";
  if (!r.operator_labels.empty()) {
    text << "  operator basis:";
    for (const std::string& l : r.operator_labels) text << " " << l;
    text << "\n";
  }
}

void Dispatch::codim_series_cmd() {
  if (opts.n_max < 1) throw ValidationError("codim-series requires --n-max N");
  if (a().kind == AlgebraKind::Associative)
    flags.push_back("distinct-index reading of the product chain formula");
  else
    flags.push_back("module complements verified for one equivariant choice");
  CodimSeries r = codim_series(a(), structure(), opts.n_max);
  ordered_json values = ordered_json::array();
  ordered_json entries = ordered_json::array();
  text << "codimensions:";
  for (const CodimReport& e : r.entries) {
    values.push_back(e.value);
    entries.push_back(render_codim(e));
    text << " " << e.value;
  }
  text << "\n";
  results["values"] = values;
  results["entries"] = entries;
  results["predicted_exponent"] = r.predicted_exponent;
  results["exponent_note"] = r.exponent_note;
  if (r.predicted_exponent >= 0)
    text << "predicted exponent " << r.predicted_exponent << " ("
         << r.exponent_note << ")\n";
  else
    text << "no exponent prediction: " << r.exponent_note << "\n";
}

void Dispatch::check_identity() {
  if (opts.poly.empty())
    throw ValidationError("check-identity requires --poly NAME");
  const NamedPolynomial* np = find_polynomial(pf, opts.poly);
  if (!np) throw ValidationError("unknown polynomial '" + opts.poly + "'");
  const Structure& s = resolve_structure(pf, np->structure);
  if (std::holds_alternative<GroupAction>(s))
    flags.push_back("operators applied per variable; the span covers "
                    "anti-automorphism reversals");
  IdentityReport r = is_identity(a(), s, np->poly);
  results["polynomial"] = opts.poly;
  results["holds"] = r.holds;
  text << "identity: " << (r.holds ? "true" : "false") << "\n";
  if (!r.holds) {
    results["witness_indices"] = r.witness;
    ordered_json w = ordered_json::array();
    ordered_json pretty = ordered_json::array();
    for (const Vec& v : r.witness_vectors) {
      w.push_back(render_vec(v));
      pretty.push_back(combo(a(), v));
    }
    results["witness"] = w;
    results["witness_elements"] = pretty;
    results["value"] = render_vec(r.value);
    text << "witness substitution:\n";
    for (std::size_t i = 0; i < r.witness_vectors.size(); ++i)
      text << "  x" << i << " = " << combo(a(), r.witness_vectors[i]) << "\n";
    text << "value = " << combo(a(), r.value) << "\n";
  }
}

void Dispatch::cocharacter_cmd() {
  need_n();
  const Structure& s = structure();
  const CocharacterReport* chr = nullptr;
  CocharacterReport plain;
  VanishingReport van;
  if (opts.vanishing) {
    Subspace ideal = radical(a());
    van = cocharacter_vanishing_check(a(), s, ideal, opts.n);
    chr = &van.character;
    results["nilpotency_index"] = van.nilpotency_index;
    results["tail_start"] = van.tail_start;
    ordered_json trig = ordered_json::array();
    for (const Partition& p : van.triggered)
      trig.push_back(render_partition(p));
    results["triggered"] = trig;
    results["unconstrained"] = int(van.unconstrained.size());
  } else {
    plain = cocharacter(a(), s, opts.n);
    chr = &plain;
  }
  results["n"] = chr->n;
  results["codimension"] = chr->codimension;
  ordered_json mults = ordered_json::array();
  text << "cocharacter at n = " << chr->n << " (codimension "
       << chr->codimension << ")\n";
  for (const auto& [lam, m] : chr->multiplicities) {
    ordered_json mj;
    mj["partition"] = render_partition(lam);
    mj["multiplicity"] = m;
    mj["hook_dimension"] = hook_dimension(lam);
    mults.push_back(mj);
    if (m != 0)
      text << "  m" << lam.str() << " = " << m << "  (dim " << hook_dimension(lam)
           << ")\n";
  }
  results["multiplicities"] = mults;
  ordered_json chi = ordered_json::array();
  for (const auto& [mu, tr] : chr->class_character) {
    ordered_json cj;
    cj["class"] = render_partition(mu);
    cj["trace"] = tr.str();
    chi.push_back(cj);
  }
  results["class_character"] = chi;
  if (opts.vanishing) {
    text << "vanishing rule: nilpotency index " << van.nilpotency_index
         << ", rows constrained from " << van.tail_start << "; "
         << van.triggered.size() << " partition(s) forced to zero, all"
         << " confirmed\n";
    for (const Partition& p : van.triggered) text << "  " << p.str() << "\n";
  }
}

void Dispatch::check_simple() {
  std::vector<LieChain> supplied;
  if (!opts.chains.empty()) {
    const auto* c = find_chains(pf, opts.chains);
    if (!c) throw ValidationError("unknown chain list '" + opts.chains + "'");
    supplied = *c;
  }
  flags.push_back("distinct-index reading of the product chain formula");
  CriterionReport r = simplicity_criterion_report(a(), structure(), supplied);
  results["dim"] = a().dim;
  results["exponent"] = r.exponent.d;
  results["simple"] = r.simplicity.simple;
  results["conclusive"] = r.simplicity.conclusive;
  results["absolutely"] = r.simplicity.absolutely;
  if (!r.simplicity.simple && r.simplicity.conclusive &&
      r.simplicity.certificate.dim() > 0)
    results["invariant_ideal"] = render_subspace(a(), r.simplicity.certificate);
  if (r.trivial_exponent)
    results["trivial_exponent"] = r.trivial_exponent->d;
  results["note"] = r.note;
  text << "invariant-simple: "
       << (r.simplicity.conclusive ? (r.simplicity.simple ? "yes" : "no")
                                   : "undecided over the base field")
       << "; exponent " << r.exponent.d << " vs dim " << a().dim << "\n";
  if (r.trivial_exponent)
    text << "exponent with the structure forgotten: " << r.trivial_exponent->d
         << "\n";
  if (!r.note.empty()) text << r.note << "\n";
}

}  // namespace

const char* engine_version() { return "0.1.0"; }

RunOptions parse_run_args(const std::vector<std::string>& args) {
  if (args.empty()) throw ValidationError("no command given");
  RunOptions o;
  o.command = args[0];
  auto int_arg = [&](std::size_t& i, const char* flag) {
    if (i + 1 >= args.size())
      throw ValidationError(std::string(flag) + " needs a value");
    try {
      return std::stoi(args[++i]);
    } catch (const std::exception&) {
      throw ValidationError(std::string(flag) + " needs an integer");
    }
  };
  auto str_arg = [&](std::size_t& i, const char* flag) {
    if (i + 1 >= args.size())
      throw ValidationError(std::string(flag) + " needs a value");
    return args[++i];
  };
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& f = args[i];
    if (f == "--n")
      o.n = int_arg(i, "--n");
    else if (f == "--n-max")
      o.n_max = int_arg(i, "--n-max");
    else if (f == "--structure")
      o.structure = str_arg(i, "--structure");
    else if (f == "--poly")
      o.poly = str_arg(i, "--poly");
    else if (f == "--chains")
      o.chains = str_arg(i, "--chains");
    else if (f == "--dualize")
      o.dualize = true;
    else if (f == "--vanishing")
      o.vanishing = true;
    else
      throw ValidationError("unknown flag '" + f + "'");
  }
  return o;
}

RunReport run_command(const ProblemFile& problem, const RunOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Dispatch d{problem, opts, {}, {}, {}};

  if (opts.command == "validate")
    d.validate();
  else if (opts.command == "radical")
    d.radical_cmd();
  else if (opts.command == "decompose")
    d.splitting(true);
  else if (opts.command == "wedderburn-malcev") {
    if (problem.algebra.kind != AlgebraKind::Associative)
      throw ValidationError("wedderburn-malcev needs an associative algebra;"
                            " use levi for lie algebras");
    d.splitting(false);
  } else if (opts.command == "levi") {
    if (problem.algebra.kind != AlgebraKind::Lie)
      throw ValidationError("levi needs a lie algebra; use wedderburn-malcev"
                            " for associative algebras");
    d.splitting(false);
  } else if (opts.command == "exponent")
    d.exponent_cmd();
  else if (opts.command == "lie-exponent")
    d.lie_exponent_cmd();
  else if (opts.command == "codim")
    d.codim_cmd();
  else if (opts.command == "codim-series")
    d.codim_series_cmd();
  else if (opts.command == "check-identity")
    d.check_identity();
  else if (opts.command == "cocharacter")
    d.cocharacter_cmd();
  else if (opts.command == "check-simple")
    d.check_simple();
  else
    throw ValidationError("unknown command '" + opts.command + "'");

  auto t1 = std::chrono::steady_clock::now();
  long ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  ordered_json doc;
  ordered_json meta;
  meta["command"] = opts.command;
  meta["engine_version"] = engine_version();
  meta["problem_digest"] = fnv1a64(problem.canonical);
  meta["schema_version"] = 1;
  /// informational only; results are deterministic given inputs and flags
  meta["timing_ms"] = ms;
  meta["flags"] = d.flags;
  doc["meta"] = meta;
  doc["results"] = d.results;

  RunReport out;
  out.command = opts.command;
  out.text = d.text.str();
  out.json = doc.dump(2);
  return out;
}

}  // namespace pialg
