#ifndef PIALG_ERRORS_HPP
#define PIALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pialg {

/// bad or rejected input; maps to process exit code 2
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// declined work: the requested computation exceeds the configured budget;
/// maps to process exit code 3
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// a theorem-backed runtime check failed, which signals a bug here rather
/// than bad input; maps to process exit code 4
class InternalError : public std::runtime_error {
public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pialg

#endif
