#include "pialg.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "problem.hpp"
#include "run.hpp"

struct pialg_problem {
  pialg::ProblemFile file;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error_out, const std::string& msg) {
  if (error_out) *error_out = dup_string(msg);
}

/// runs the body and maps exceptions onto the status codes
template <typename F>
int guarded(char** error_out, F&& body) {
  try {
    return body();
  } catch (const pialg::ValidationError& e) {
    set_error(error_out, e.what());
    return PIALG_E_VALIDATION;
  } catch (const pialg::BudgetError& e) {
    set_error(error_out, e.what());
    return PIALG_E_BUDGET;
  } catch (const pialg::InternalError& e) {
    set_error(error_out, e.what());
    return PIALG_E_INTERNAL;
  } catch (const std::bad_alloc&) {
    set_error(error_out, "out of memory");
    return PIALG_E_INTERNAL;
  } catch (const std::exception& e) {
    set_error(error_out, std::string("unexpected error: ") + e.what());
    return PIALG_E_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* pialg_version(void) { return pialg::engine_version(); }

int pialg_problem_parse(const char* json_text, pialg_problem** out,
                        char** error_out) {
  if (!json_text || !out) {
    set_error(error_out, "null argument");
    return PIALG_E_VALIDATION;
  }
  *out = nullptr;
  return guarded(error_out, [&] {
    auto* p = new pialg_problem{pialg::parse_problem(json_text)};
    *out = p;
    return PIALG_OK;
  });
}

int pialg_problem_load_file(const char* path, pialg_problem** out,
                            char** error_out) {
  if (!path || !out) {
    set_error(error_out, "null argument");
    return PIALG_E_VALIDATION;
  }
  *out = nullptr;
  return guarded(error_out, [&] {
    auto* p = new pialg_problem{pialg::load_problem(path)};
    *out = p;
    return PIALG_OK;
  });
}

void pialg_problem_free(pialg_problem* p) { delete p; }

int pialg_run(const pialg_problem* p, int argc, const char* const* argv,
              char** json_out, char** text_out, char** error_out) {
  if (!p || argc < 1 || !argv) {
    set_error(error_out, "null argument");
    return PIALG_E_VALIDATION;
  }
  return guarded(error_out, [&] {
    std::vector<std::string> args;
    for (int i = 0; i < argc; ++i) {
      if (!argv[i]) throw pialg::ValidationError("null argv entry");
      args.push_back(argv[i]);
    }
    pialg::RunOptions opts = pialg::parse_run_args(args);
    pialg::RunReport rep = pialg::run_command(p->file, opts);
    if (json_out) *json_out = dup_string(rep.json);
    if (text_out) *text_out = dup_string(rep.text);
    return PIALG_OK;
  });
}

void pialg_free_string(char* s) { std::free(s); }

}  // extern "C"
