#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conictr/solver.hpp"

namespace conictr {

struct TestProblem {
  std::string name;
  std::size_t n = 0;
  Objective objective;
  Gradient gradient;
  Vector x0;
  std::optional<double> f_opt;
};

// Catalogue lookup by name (case/space/hyphen-insensitive) and dimension.
// Throws UnknownProblem / BadDimension. Formulas and starting points are
// documented in docs/problems.md.
TestProblem get_problem(const std::string& name, std::size_t n);

// Names in catalogue order; "Extended Trigonometric" appears twice (rows 8
// and 16 share one definition).
const std::vector<std::string>& problem_names();

// (name, n) rows of the small benchmark set and of the scaling set.
const std::vector<std::pair<std::string, std::size_t>>& small_benchmark_rows();
const std::vector<std::pair<std::string, std::size_t>>& scaling_benchmark_rows();

// Max relative component error between the analytic gradient and central
// finite differences with step h_i = cbrt(eps)*(1+|x_i|).
double fd_check(const TestProblem& p, const Vector& x);

}  // namespace conictr
