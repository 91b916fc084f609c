#ifndef PIALG_PROBLEM_HPP
#define PIALG_PROBLEM_HPP

#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "codim.hpp"
#include "exponent.hpp"
#include "structure.hpp"

namespace pialg {

/// a polynomial as loaded from a problem file, remembering which structure
/// its decorations were resolved against
struct NamedPolynomial {
  std::string structure;  // empty when the polynomial is plain
  /// names behind poly.ops, for reports and round-trips
  std::vector<std::string> op_names;
  MultilinearPolynomial poly;
};

/// fully validated model of one problem file
struct ProblemFile {
  const FieldData* field = nullptr;
  Algebra algebra;
  std::vector<std::pair<std::string, Structure>> structures;
  std::vector<std::pair<std::string, NamedPolynomial>> polynomials;
  std::vector<std::pair<std::string, std::vector<LieChain>>> chains;
  /// canonical JSON dump used for the report digest
  std::string canonical;
};

/// parse and validate a problem from JSON text; errors carry the offending
/// path inside the document
ProblemFile parse_problem(const std::string& json_text);

/// read a file and parse it
ProblemFile load_problem(const std::string& path);

const Structure* find_structure(const ProblemFile& p, const std::string& name);
const NamedPolynomial* find_polynomial(const ProblemFile& p,
                                       const std::string& name);
const std::vector<LieChain>* find_chains(const ProblemFile& p,
                                         const std::string& name);

/// render the loaded model back to problem-file JSON (used by the
/// round-trip tests)
std::string render_problem(const ProblemFile& p);

}  // namespace pialg

#endif
