#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "conictr/problems.hpp"
#include "conictr/solver.hpp"

namespace conictr {

enum class ReportFormat { Csv, Markdown };

struct BenchSpec {
  std::vector<std::pair<std::string, std::size_t>> problems;  // (name, n), in output order
  std::vector<Strategy> strategies;                           // ADM and/or DCTR
  SolverConfig base;
  ReportFormat format = ReportFormat::Csv;
  std::string out_path;  // empty => stdout
  std::uint64_t seed = 0;
};

// One row per (problem, strategy). Returns 0 when every run converged,
// 1 when some run failed, 2 on a bad spec (diagnostic on `diag`).
int run_bench(const BenchSpec& spec, std::ostream& diag);

struct OracleOptions {
  std::uint64_t seed = 20240101;
  int count = 500;  // instances per tau-stage case and per property
  bool inject_tau_fault = false;  // deliberately corrupt the tau-stage under test
  std::string dump_path;          // counterexample JSON; empty => stderr
};

// Runs the independent oracles: tau-stage optimality against a dense grid
// over Omega, subproblem feasibility/decrease, the predicted-reduction
// lower bounds, and BFGS positive definiteness. Returns 0 on a clean pass;
// on the first violation serializes the instance for replay and returns 1.
int run_oracles(const OracleOptions& opt, std::ostream& out, std::ostream& err);

// Replays a serialized counterexample file. Returns 0 if the instance now
// passes, 1 if it still fails, 2 if the file cannot be read.
int replay_oracle(const std::string& path, std::ostream& out, std::ostream& err);

// Finite-difference gradient check over the whole catalogue at the small
// benchmark dimensions; x0 plus `points` perturbed points per problem.
int run_gradcheck(std::uint64_t seed, int points, std::ostream& out);

}  // namespace conictr
