#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

// Root of every error raised by the library. `kind()` is a stable short tag
// used by the CLI when it serializes failures as JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct EvaluationError : Error {
  explicit EvaluationError(const std::string& w) : Error("evaluation", w) {}
};
struct InterfaceError : Error {
  explicit InterfaceError(const std::string& w) : Error("interface", w) {}
};
struct RangeError : Error {
  explicit RangeError(const std::string& w) : Error("range", w) {}
};
struct OverflowError : Error {
  explicit OverflowError(const std::string& w) : Error("numerical_overflow", w) {}
};
struct InvalidTransferError : Error {
  explicit InvalidTransferError(const std::string& w) : Error("invalid_transfer", w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error("convergence", w) {}
};
struct IntegrationError : Error {
  explicit IntegrationError(const std::string& w) : Error("integration", w) {}
};
struct StateError : Error {
  explicit StateError(const std::string& w) : Error("state", w) {}
};
struct LocalityError : Error {
  explicit LocalityError(const std::string& w) : Error("locality_violation", w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct SpecialFunctionError : Error {
  explicit SpecialFunctionError(const std::string& w) : Error("special_function", w) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("config", w) {}
};

}  // namespace vdw
