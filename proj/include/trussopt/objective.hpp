#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "trussopt/topology.hpp"

namespace trussopt {

struct ConstraintSet {
  double allowable_stress = 0.0;        // applied as +/- to every element
  double allowable_displacement = 0.0;  // applied as +/- to every free dof
};

// Complete benchmark problem. Unit labels are documentation only; the
// numbers form a consistent system per problem.
struct ProblemDefinition {
  std::string name;
  GroundStructure ground;
  DesignSpace space;
  ConstraintSet constraints;
  std::string length_unit;
  std::string force_unit;
};

// Objective value assigned to designs that fail stability or constraints.
inline constexpr double kInfeasible = 1e20;

struct EvalResult {
  double weight = 0.0;
  bool feasible = false;
  double objective = kInfeasible;
  double max_abs_stress = 0.0;
  double max_abs_displacement = 0.0;
  Topology refined_topology;
  bool stable = false;
};

using EvalCounter = std::atomic<long long>;

// true iff stable and max|sigma| <= sigma_a and max|u| <= delta_a.
// Comparisons are non-strict and exact: the Problem 1 optimum sits exactly at
// the stress bound, so no tolerance band is admissible.
bool check_constraints(const AnalysisResult& analysis,
                       const ConstraintSet& constraints);

// Full pipeline: decode -> instantiate -> remove_unwanted_elements ->
// analyze -> constraint check -> hard penalty. Weight is computed on the
// refined topology. Increments `counter` by exactly one.
EvalResult evaluate(const std::vector<double>& x,
                    const ProblemDefinition& problem, EvalCounter& counter);

}  // namespace trussopt
