#pragma once

#include <array>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "trussopt/fea.hpp"

namespace trussopt {

// Search-space definition: node set, candidate member list, boundary
// conditions, material. Candidate elements are what the design variables
// switch on and off.
struct GroundStructure {
  int dimension = 2;
  std::vector<std::array<double, 3>> nodes;
  std::vector<std::pair<int, int>> candidate_elements;
  std::set<std::pair<int, int>> supports;
  std::map<std::pair<int, int>, double> loads;
  double elastic_modulus = 0.0;
  double weight_density = 0.0;
};

struct DesignSpace {
  int D = 0;                  // number of design variables
  std::vector<double> low;    // per-variable lower bounds
  std::vector<double> up;     // per-variable upper bounds
  double area_min = 0.0;      // areas below this decode to zero (member absent)
  double area_max = 0.0;      // areas cap here
  // variable index -> candidate-element indices it controls; every candidate
  // element is controlled by exactly one variable.
  std::vector<std::vector<int>> symmetry;
};

struct Topology {
  std::vector<char> present;  // over candidate elements
  std::vector<double> areas;  // zero where absent
};

// Area decoding: x < area_min -> 0, x > area_max -> area_max, else x,
// broadcast through the symmetry map. Throws std::invalid_argument on a
// length mismatch.
Topology decode(const std::vector<double>& x, const DesignSpace& space,
                const GroundStructure& ground);

// Builds the truss carrying only present elements. Nodes without incident
// elements are dropped unless they carry a load; a kept loaded node with no
// stiffness makes the model a mechanism downstream, which is exactly the
// required marking.
TrussModel instantiate(const Topology& topology, const GroundStructure& ground);

// Element-removal refinement: iteratively deletes, to a fixed point,
// (a) elements at an unloaded unsupported node whose incident members cannot
// equilibrate it (fewer than 2 in 2D / fewer than 3 non-coplanar in 3D, or
// all mutually collinear), except members whose removal would isolate a
// loaded or supported node at the far end, and (b) nodes left bare.
TrussModel remove_unwanted_elements(const TrussModel& model,
                                    const GroundStructure& ground);

// Angular tolerance for collinearity/coplanarity of member directions.
inline constexpr double kCollinearTol = 1e-6;

}  // namespace trussopt
