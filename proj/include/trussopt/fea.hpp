#pragma once

#include <array>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace trussopt {

// Pin-jointed truss for linear static analysis. Coordinates carry 2 or 3
// meaningful components depending on `dimension`; the engine is unit-agnostic
// (each benchmark states its own consistent unit system).
struct TrussModel {
  struct Element {
    int a = 0;
    int b = 0;
    double area = 0.0;
    int tag = -1;  // candidate-element index in the originating ground structure
  };

  int dimension = 2;
  std::vector<std::array<double, 3>> nodes;
  std::vector<Element> elements;
  std::set<std::pair<int, int>> supports;          // (node, axis) fixed to zero
  std::map<std::pair<int, int>, double> loads;     // (node, axis) -> force
  double elastic_modulus = 0.0;
  double weight_density = 0.0;
};

struct AnalysisResult {
  bool stable = false;
  std::vector<double> displacements;     // over free dofs; empty when unstable
  std::vector<double> element_stresses;  // tension positive; empty when unstable
};

// Symmetric matrix over the free dofs, dense row-major storage.
struct SymmetricMatrix {
  int n = 0;
  std::vector<double> a;  // n*n

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Relative pivot threshold for the kinematic-stability test: the factorization
// fails (model unstable) when a pivot drops to pivot_tol times the largest
// initial diagonal entry of K.
inline constexpr double kPivotTol = 1e-10;

// Maps model dofs (node*dimension + axis) to indices over free dofs; -1 where
// supported.
std::vector<int> free_dof_map(const TrussModel& model);

// Reduced global stiffness matrix (support dofs eliminated). Throws
// std::invalid_argument on malformed models (dangling node indices,
// non-positive areas, duplicate or degenerate elements).
SymmetricMatrix assemble_stiffness(const TrussModel& model);

// Direct stiffness solution. Instability (singular K under the pivot rule) is
// a valid result, not an error.
AnalysisResult analyze(const TrussModel& model);

// Total weight sum(rho * L_i * A_i) over elements.
double self_weight(const TrussModel& model);

// LDL^T with diagonal pivoting on a copy of K. Returns false when a pivot
// falls below tol * max initial diagonal (kinematic instability); otherwise
// fills `solution` with K^-1 rhs.
bool factor_solve(const SymmetricMatrix& K, const std::vector<double>& rhs,
                  double pivot_tol, std::vector<double>& solution);

}  // namespace trussopt
