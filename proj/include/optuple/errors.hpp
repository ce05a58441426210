#pragma once

#include <stdexcept>
#include <string>

namespace optuple {

struct ZeroVectorError : std::invalid_argument {
  ZeroVectorError() : std::invalid_argument("operation undefined for the zero vector") {}
};

struct NotUnitVectorError : std::invalid_argument {
  explicit NotUnitVectorError(double norm)
      : std::invalid_argument("expected a unit vector, got norm " + std::to_string(norm)) {}
};

struct ZeroOperatorError : std::invalid_argument {
  ZeroOperatorError() : std::invalid_argument("operation undefined for the zero operator") {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ShapeMismatch : std::invalid_argument {
  explicit ShapeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionTooLarge : std::invalid_argument {
  explicit DimensionTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct HypothesisNotSatisfied : std::runtime_error {
  explicit HypothesisNotSatisfied(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when no convex combination of candidate norming functionals
/// annihilates the subspace. Carries the best feasibility residual reached,
/// so callers can distinguish "almost there" from "hopeless".
struct CertificateNotFound : std::runtime_error {
  double best_residual;
  explicit CertificateNotFound(double residual)
      : std::runtime_error("no certificate found; best feasibility residual " +
                           std::to_string(residual)),
        best_residual(residual) {}
};

/// Instance-file parse failure; `path` is the JSON pointer of the offending node.
struct ParseError : std::runtime_error {
  std::string path;
  ParseError(const std::string& json_path, const std::string& what)
      : std::runtime_error("at " + json_path + ": " + what), path(json_path) {}
};

}  // namespace optuple
