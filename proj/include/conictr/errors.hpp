#pragma once

#include <stdexcept>
#include <string>

namespace conictr {

struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroVector : std::invalid_argument {
  explicit ZeroVector(const std::string& what) : std::invalid_argument(what) {}
};

// Null space of a length-1 vector is {0}; stage 2 must be skipped.
struct Dimension1 : std::invalid_argument {
  explicit Dimension1(const std::string& what) : std::invalid_argument(what) {}
};

struct PoleAtTauM : std::domain_error {
  explicit PoleAtTauM(const std::string& what) : std::domain_error(what) {}
};

// A conic-dogleg denominator vanished or the step produced no model
// decrease; the caller shrinks the radius and retries.
struct DegenerateConicStep : std::runtime_error {
  explicit DegenerateConicStep(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownProblem : std::invalid_argument {
  explicit UnknownProblem(const std::string& what) : std::invalid_argument(what) {}
};

struct BadDimension : std::invalid_argument {
  explicit BadDimension(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace conictr
