#include "trussopt/fea.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace trussopt {

namespace {

void validate(const TrussModel& model) {
  if (model.dimension != 2 && model.dimension != 3)
    throw std::invalid_argument("truss dimension must be 2 or 3");
  const int nn = static_cast<int>(model.nodes.size());
  std::set<std::pair<int, int>> seen;
  for (const auto& e : model.elements) {
    if (e.a < 0 || e.a >= nn || e.b < 0 || e.b >= nn)
      throw std::invalid_argument("element references a missing node");
    if (e.a == e.b) throw std::invalid_argument("element joins a node to itself");
    if (!(e.area > 0.0)) throw std::invalid_argument("element area must be positive");
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate element");
  }
  for (const auto& [node, axis] : model.supports) {
    if (node < 0 || node >= nn || axis < 0 || axis >= model.dimension)
      throw std::invalid_argument("support references a missing dof");
  }
  for (const auto& [dof, value] : model.loads) {
    (void)value;
    if (dof.first < 0 || dof.first >= nn || dof.second < 0 ||
        dof.second >= model.dimension)
      throw std::invalid_argument("load references a missing dof");
  }
}

double element_length(const TrussModel& model, const TrussModel::Element& e,
                      double dir[3]) {
  double L2 = 0.0;
  for (int k = 0; k < model.dimension; ++k) {
    dir[k] = model.nodes[e.b][k] - model.nodes[e.a][k];
    L2 += dir[k] * dir[k];
  }
  const double L = std::sqrt(L2);
  if (!(L > 0.0)) throw std::invalid_argument("zero-length element");
  for (int k = 0; k < model.dimension; ++k) dir[k] /= L;
  return L;
}

}  // namespace

std::vector<int> free_dof_map(const TrussModel& model) {
  const int dim = model.dimension;
  std::vector<int> map(model.nodes.size() * dim, -1);
  int next = 0;
  for (std::size_t node = 0; node < model.nodes.size(); ++node) {
    for (int axis = 0; axis < dim; ++axis) {
      if (model.supports.count({static_cast<int>(node), axis}) == 0)
        map[node * dim + axis] = next++;
    }
  }
  return map;
}

SymmetricMatrix assemble_stiffness(const TrussModel& model) {
  validate(model);
  const int dim = model.dimension;
  const std::vector<int> dofs = free_dof_map(model);
  const int n = static_cast<int>(std::count_if(
      dofs.begin(), dofs.end(), [](int d) { return d >= 0; }));

  SymmetricMatrix K;
  K.n = n;
  K.a.assign(static_cast<std::size_t>(n) * n, 0.0);

  for (const auto& e : model.elements) {
    double dir[3] = {0, 0, 0};
    const double L = element_length(model, e, dir);
    const double k = model.elastic_modulus * e.area / L;
    // k * lambda lambda^T over the element's up-to-6 dofs, signs +a -b.
    for (int p = 0; p < 2 * dim; ++p) {
      const int node_p = (p < dim) ? e.a : e.b;
      const double sp = (p < dim) ? 1.0 : -1.0;
      const int gp = dofs[static_cast<std::size_t>(node_p) * dim + p % dim];
      if (gp < 0) continue;
      for (int q = 0; q < 2 * dim; ++q) {
        const int node_q = (q < dim) ? e.a : e.b;
        const double sq = (q < dim) ? 1.0 : -1.0;
        const int gq = dofs[static_cast<std::size_t>(node_q) * dim + q % dim];
        if (gq < 0) continue;
        K.at(gp, gq) += k * sp * dir[p % dim] * sq * dir[q % dim];
      }
    }
  }
  return K;
}

bool factor_solve(const SymmetricMatrix& K, const std::vector<double>& rhs,
                  double pivot_tol, std::vector<double>& solution) {
  const int n = K.n;
  solution.assign(n, 0.0);
  if (n == 0) return true;

  std::vector<double> A = K.a;
  std::vector<double> b = rhs;
  auto at = [&](int i, int j) -> double& {
    return A[static_cast<std::size_t>(i) * n + j];
  };

  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, at(i, i));
  if (!(max_diag > 0.0)) return false;
  const double threshold = pivot_tol * max_diag;

  // LDL^T with symmetric (diagonal) pivoting; rows/columns are swapped
  // physically and the permutation applied to the right-hand side.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (at(i, i) > at(piv, piv)) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      for (int i = 0; i < n; ++i) std::swap(at(i, k), at(i, piv));
      std::swap(b[k], b[piv]);
      std::swap(perm[k], perm[piv]);
    }
    const double d = at(k, k);
    if (!(d > threshold)) return false;
    for (int i = k + 1; i < n; ++i) {
      const double l = at(i, k) / d;
      if (l == 0.0) continue;
      for (int j = k; j < n; ++j) at(i, j) -= l * at(k, j);
      b[i] -= l * b[k];
    }
  }

  // Back substitution on the upper-triangular remains (rows scaled by d).
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= at(i, j) * b[j];
    b[i] = s / at(i, i);
  }
  for (int i = 0; i < n; ++i) solution[perm[i]] = b[i];
  return true;
}

AnalysisResult analyze(const TrussModel& model) {
  const SymmetricMatrix K = assemble_stiffness(model);
  const std::vector<int> dofs = free_dof_map(model);

  std::vector<double> F(K.n, 0.0);
  for (const auto& [dof, value] : model.loads) {
    const int g = dofs[static_cast<std::size_t>(dof.first) * model.dimension +
                       dof.second];
    if (g >= 0) F[g] += value;
  }

  AnalysisResult result;
  std::vector<double> u;
  if (!factor_solve(K, F, kPivotTol, u)) return result;  // stable = false

  result.stable = true;
  result.displacements = std::move(u);
  result.element_stresses.reserve(model.elements.size());
  const int dim = model.dimension;
  for (const auto& e : model.elements) {
    double dir[3] = {0, 0, 0};
    const double L = element_length(model, e, dir);
    double elongation = 0.0;
    for (int k = 0; k < dim; ++k) {
      const int ga = dofs[static_cast<std::size_t>(e.a) * dim + k];
      const int gb = dofs[static_cast<std::size_t>(e.b) * dim + k];
      const double ua = ga >= 0 ? result.displacements[ga] : 0.0;
      const double ub = gb >= 0 ? result.displacements[gb] : 0.0;
      elongation += (ub - ua) * dir[k];
    }
    result.element_stresses.push_back(model.elastic_modulus / L * elongation);
  }
  return result;
}

double self_weight(const TrussModel& model) {
  double w = 0.0;
  for (const auto& e : model.elements) {
    double dir[3] = {0, 0, 0};
    const double L = element_length(model, e, dir);
    w += model.weight_density * L * e.area;
  }
  return w;
}

}  // namespace trussopt
