#include "trussopt/objective.hpp"

#include <algorithm>
#include <cmath>

#include "trussopt/fea.hpp"

namespace trussopt {

bool check_constraints(const AnalysisResult& analysis,
                       const ConstraintSet& constraints) {
  if (!analysis.stable) return false;
  for (double s : analysis.element_stresses)
    if (!(std::abs(s) <= constraints.allowable_stress)) return false;
  for (double u : analysis.displacements)
    if (!(std::abs(u) <= constraints.allowable_displacement)) return false;
  return true;
}

EvalResult evaluate(const std::vector<double>& x,
                    const ProblemDefinition& problem, EvalCounter& counter) {
  counter.fetch_add(1, std::memory_order_relaxed);

  const Topology raw = decode(x, problem.space, problem.ground);
  const TrussModel candidate = instantiate(raw, problem.ground);
  const TrussModel refined = remove_unwanted_elements(candidate, problem.ground);

  EvalResult result;
  result.refined_topology.present.assign(problem.ground.candidate_elements.size(), 0);
  result.refined_topology.areas.assign(problem.ground.candidate_elements.size(), 0.0);
  for (const auto& e : refined.elements) {
    result.refined_topology.present[e.tag] = 1;
    result.refined_topology.areas[e.tag] = e.area;
  }

  result.weight = self_weight(refined);

  const AnalysisResult analysis = analyze(refined);
  result.stable = analysis.stable;
  if (analysis.stable) {
    for (double s : analysis.element_stresses)
      result.max_abs_stress = std::max(result.max_abs_stress, std::abs(s));
    for (double u : analysis.displacements)
      result.max_abs_displacement =
          std::max(result.max_abs_displacement, std::abs(u));
  }

  result.feasible = check_constraints(analysis, problem.constraints);
  result.objective = result.feasible ? result.weight : kInfeasible;
  return result;
}

}  // namespace trussopt
