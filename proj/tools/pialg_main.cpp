// command-line front end; all engine access goes through the C API
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pialg.h"

namespace {

struct Options {
  std::string file;
  int n = -1;
  int n_max = -1;
  std::string structure;
  std::string poly;
  std::string chains;
  bool dualize = false;
  bool vanishing = false;
};

int run(const std::string& command, const Options& o) {
  pialg_problem* problem = nullptr;
  char* error = nullptr;
  int code = pialg_problem_load_file(o.file.c_str(), &problem, &error);
  if (code != PIALG_OK) {
    std::fprintf(stderr, "error: %s\n", error ? error : "load failed");
    pialg_free_string(error);
    return code;
  }

  std::vector<std::string> args{command};
  auto flag = [&](const char* name, const std::string& value) {
    args.push_back(name);
    args.push_back(value);
  };
  if (o.n >= 0) flag("--n", std::to_string(o.n));
  if (o.n_max >= 0) flag("--n-max", std::to_string(o.n_max));
  if (!o.structure.empty()) flag("--structure", o.structure);
  if (!o.poly.empty()) flag("--poly", o.poly);
  if (!o.chains.empty()) flag("--chains", o.chains);
  if (o.dualize) args.push_back("--dualize");
  if (o.vanishing) args.push_back("--vanishing");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());

  char* json = nullptr;
  char* text = nullptr;
  code = pialg_run(problem, int(argv.size()), argv.data(), &json, &text,
                   &error);
  if (code != PIALG_OK) {
    std::fprintf(stderr, "error: %s\n", error ? error : "run failed");
  } else {
    if (text && *text) std::fputs(text, stdout);
    if (json) std::printf("%s\n", json);
  }
  pialg_free_string(json);
  pialg_free_string(text);
  pialg_free_string(error);
  pialg_problem_free(problem);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for polynomial identities of finite-dimensional "
               "algebras with gradings, group actions, and derivations"};
  app.set_version_flag("--version", pialg_version());
  app.require_subcommand(1);
  Options o;

  auto add = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("-f,--file", o.file, "problem file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    return sub;
  };
  auto with_structure = [&](CLI::App* sub) {
    sub->add_option("--structure", o.structure,
                    "named structure from the problem file (default trivial)");
    return sub;
  };

  add("validate", "load a problem and report what it contains");
  add("radical", "radical basis, nilpotency index, and method");
  with_structure(
      add("decompose", "invariant radical complement and its simple pieces"));
  with_structure(add("wedderburn-malcev",
                     "structure-invariant Wedderburn-Malcev complement"));
  with_structure(add("levi", "structure-invariant Levi subalgebra"));
  with_structure(add("exponent", "PI-exponent of an associative algebra"));
  CLI::App* lie_exp = with_structure(
      add("lie-exponent", "Lie PI-exponent from verified ideal chains"));
  lie_exp->add_option("--chains", o.chains,
                      "named chain list from the problem file");
  CLI::App* codim = with_structure(
      add("codim", "codimension of the multilinear identities at arity n"));
  codim->add_option("--n", o.n, "arity")->required();
  codim->add_flag("--dualize", o.dualize,
                  "compute a graded codimension through the dual action");
  CLI::App* series =
      with_structure(add("codim-series", "codimension sequence up to n-max"));
  series->add_option("--n-max", o.n_max, "largest arity")->required();
  CLI::App* check = add("check-identity",
                        "test whether a stored polynomial is an identity");
  check->add_option("--poly", o.poly, "polynomial name")->required();
  CLI::App* cochar = with_structure(
      add("cocharacter", "cocharacter multiplicities at arity n"));
  cochar->add_option("--n", o.n, "arity")->required();
  cochar->add_flag("--vanishing", o.vanishing,
                   "check the radical vanishing rule on the tail rows");
  CLI::App* simple = with_structure(
      add("check-simple", "exponent = dimension simplicity criterion"));
  simple->add_option("--chains", o.chains,
                     "named chain list from the problem file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : PIALG_E_VALIDATION;
  }

  return run(app.get_subcommands().front()->get_name(), o);
}
