#ifndef PIALG_RUN_HPP
#define PIALG_RUN_HPP

#include <string>
#include <vector>

#include "problem.hpp"

namespace pialg {

struct RunOptions {
  std::string command;
  std::string structure;  // empty = trivial structure
  int n = -1;
  int n_max = -1;
  std::string poly;
  std::string chains;
  bool dualize = false;
  bool vanishing = false;
};

/// args = command followed by flags, e.g. {"codim", "--n", "2",
/// "--structure", "z2"}
RunOptions parse_run_args(const std::vector<std::string>& args);

struct RunReport {
  std::string command;
  std::string text;  // human-readable rendering
  std::string json;  // machine-readable block, schema in docs/
};

RunReport run_command(const ProblemFile& problem, const RunOptions& opts);

const char* engine_version();

}  // namespace pialg

#endif
