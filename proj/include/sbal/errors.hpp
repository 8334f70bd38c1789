#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sbal {

// Domain error with a stable machine-readable code ("non_invertible",
// "context_mismatch", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace err {

inline Error context_mismatch(const std::string& detail) {
  return Error("context_mismatch", "context mismatch: " + detail);
}

inline Error non_invertible(const std::string& detail) {
  return Error("non_invertible",
               "non-invertible element (zero body), lies in B = "
               "Gamma^0_N \\ (Gamma^0_N)^*: " +
                   detail);
}

inline Error parity_violation(const std::string& detail) {
  return Error("parity_violation", "parity violation: " + detail);
}

inline Error dimension_mismatch(const std::string& detail) {
  return Error("dimension_mismatch", "dimension mismatch: " + detail);
}

inline Error chart_undefined(const std::string& detail) {
  return Error("chart_undefined", "chart undefined: " + detail);
}

inline Error quadrature_tolerance(const std::string& detail) {
  return Error("quadrature_tolerance", "quadrature failure: " + detail);
}

inline Error analytic_domain(const std::string& detail) {
  return Error("analytic_domain", "function undefined at body: " + detail);
}

inline Error invalid_argument(const std::string& detail) {
  return Error("invalid_argument", detail);
}

}  // namespace err
}  // namespace sbal
