#pragma once

#include <stdexcept>
#include <string>

namespace qstep {

// Every failure the library raises derives from Error. code() is a stable
// snake_case token (used by the CLI's JSON error object); numerical() marks
// failures of the numerics themselves as opposed to bad input.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, bool numerical = false)
      : std::runtime_error(message), code_(std::move(code)), numerical_(numerical) {}

  const std::string& code() const noexcept { return code_; }
  bool numerical() const noexcept { return numerical_; }

 private:
  std::string code_;
  bool numerical_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error("domain_error", m) {}
};

// The energy sits within the exclusion width of eps = nuq or eps = 1.
struct BoundaryEnergy : Error {
  explicit BoundaryEnergy(const std::string& m) : Error("boundary_energy", m) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& m) : Error("singular_system", m, true) {}
};

struct NoInteriorMinimum : Error {
  explicit NoInteriorMinimum(const std::string& m) : Error("no_interior_minimum", m, true) {}
};

struct NoMimic : Error {
  explicit NoMimic(const std::string& m) : Error("no_mimic", m) {}
};

struct LeakageError : Error {
  explicit LeakageError(const std::string& m) : Error("leakage", m, true) {}
};

struct FitError : Error {
  explicit FitError(const std::string& m) : Error("fit_error", m, true) {}
};

}  // namespace qstep
