#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphaera {

enum class ErrorKind {
  DegenerateLune,
  BadConfiguration,
  NoHemisphere,
  Degenerate,
  NotOnBoundary,
  NotSupporting,
  EmptyInterior,
  NoSolution,
  PrecondViolation,
  GenerationFailed,
  NotConstantDiameter,
  NotOnPolarBoundary,
  InvalidBody,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every precondition or invariant failure in the library surfaces as a
// GeometryError; kind() lets callers (the CLI in particular) tell them apart.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sphaera
