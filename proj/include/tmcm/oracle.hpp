#pragma once

// Brute-force references used to check the solver. Everything here is
// written independently of the production evaluation path: the energy and
// overestimate evaluators pair clique members by repeated min/max selection
// rather than by sorting, and distances are recomputed locally.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmcm/overestimate.hpp"

namespace tmcm {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDistance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

/// Independent evaluator of E(x).
Energy reference_energy(const Model& model, std::span<const Label> x);

/// Independent evaluator of the clique part of E(x).
Energy reference_clique_energy(const Model& model, std::span<const Label> x);

/// Independent evaluator of E'(y).
Energy reference_overestimate(const IntervalProblem& problem,
                              std::span<const int> y);

struct BruteForceResult {
  Labeling labeling;
  Energy energy = 0;
};

/// Exact minimizer by enumeration of all h^n labelings; ties go to the
/// lexicographically smallest labeling. Throws BudgetExceeded.
BruteForceResult brute_force_min(
    const Model& model, std::uint64_t budget = default_enumeration_budget);

struct MoveOptimum {
  MoveLabeling y;
  Energy energy = 0;
};

/// Exact minimizer of E' over all (h'+1)^n move labelings.
MoveOptimum brute_force_min_overestimate(
    const IntervalProblem& problem,
    std::uint64_t budget = default_enumeration_budget);

/// alpha-expansion with each binary move solved by enumerating all 2^n
/// keep/switch patterns on the exact energy. Among optimal moves the one
/// switching the fewest variables is taken; a move is accepted only if it
/// strictly lowers E. Alphas are visited in ascending order.
BruteForceResult reference_alpha_expansion(
    const Model& model, Labeling start,
    std::uint64_t budget = default_enumeration_budget);

/// Multiplicative bound factor for the model:
///   linear d   : (C + 2 + sqrt(C^2 + 4)) / 2, times m for m > 1
///   quadratic d: C * sqrt(M) (advisory, no closed constant)
/// with C the largest clique size and m the largest per-clique pair count.
double bound_factor(const Model& model);

struct BoundReport {
  std::string instance;
  Energy final_energy = 0;
  Energy optimal_unary = 0;
  Energy optimal_clique = 0;
  double factor = 0;
  int interval_length = 0;
  bool satisfied = false;
  bool advisory = false;  // quadratic: reported, not asserted
};

/// Checks E(result) <= sum theta_a(x*) + factor * sum theta_c(x*) against the
/// brute-force optimum x*.
BoundReport audit_bound(const Model& model, std::span<const Label> result,
                        int interval_length, std::string instance = {},
                        std::uint64_t budget = default_enumeration_budget);

void write_bound_csv(std::ostream& out, std::span<const BoundReport> reports,
                     const std::vector<std::string>& comments = {});

}  // namespace tmcm
