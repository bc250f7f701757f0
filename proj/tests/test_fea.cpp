#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "trussopt/bench.hpp"
#include "trussopt/fea.hpp"
#include "trussopt/topology.hpp"

using namespace trussopt;

namespace {

TrussModel single_bar(double load_x) {
  TrussModel m;
  m.dimension = 2;
  m.nodes = {{0, 0, 0}, {10, 0, 0}};
  m.elements = {{0, 1, 1.0, -1}};
  m.supports = {{0, 0}, {0, 1}, {1, 1}};
  m.loads = {{{1, 0}, load_x}};
  m.elastic_modulus = 1e4;
  m.weight_density = 0.1;
  return m;
}

// Symmetric two-bar V: pins at (-3,0) and (3,0), apex at (0,4), load P down.
// Bars have length 5; each carries 5P/8 compression and the apex drops by
// 125 P / (32 E A).
TrussModel two_bar_v(double p_down) {
  TrussModel m;
  m.dimension = 2;
  m.nodes = {{-3, 0, 0}, {3, 0, 0}, {0, 4, 0}};
  m.elements = {{0, 2, 1.0, -1}, {1, 2, 1.0, -1}};
  m.supports = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  m.loads = {{{2, 1}, -p_down}};
  m.elastic_modulus = 1e4;
  m.weight_density = 0.1;
  return m;
}

TrussModel all_present_problem2() {
  const auto problem = builtin_problem("problem2");
  std::vector<double> x(problem.space.D, 0.3);
  return instantiate(decode(x, problem.space, problem.ground), problem.ground);
}

std::vector<double> load_vector(const TrussModel& m, const SymmetricMatrix& K) {
  const auto dofs = free_dof_map(m);
  std::vector<double> F(K.n, 0.0);
  for (const auto& [dof, value] : m.loads) {
    const int g = dofs[static_cast<std::size_t>(dof.first) * m.dimension +
                       dof.second];
    if (g >= 0) F[g] += value;
  }
  return F;
}

}  // namespace

TEST_CASE("single bar follows PL/EA") {
  const auto m = single_bar(5.0);
  const auto K = assemble_stiffness(m);
  REQUIRE(K.n == 1);
  CHECK(K.at(0, 0) == doctest::Approx(1000.0).epsilon(1e-12));  // EA/L

  const auto r = analyze(m);
  REQUIRE(r.stable);
  CHECK(r.displacements[0] == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(r.element_stresses[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(self_weight(m) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two-bar V closed form") {
  const double P = 8.0;
  const auto m = two_bar_v(P);
  const auto r = analyze(m);
  REQUIRE(r.stable);
  // F = 5P/8 compression, sigma = F/A, apex drop = 125P/(32 E A).
  CHECK(r.element_stresses[0] == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(r.element_stresses[1] == doctest::Approx(-5.0).epsilon(1e-12));
  const auto dofs = free_dof_map(m);
  const int apex_y = dofs[2 * 2 + 1];
  REQUIRE(apex_y >= 0);
  CHECK(r.displacements[apex_y] ==
        doctest::Approx(-125.0 * P / (32.0 * 1e4)).epsilon(1e-12));
  // Apex x stays put by symmetry.
  const int apex_x = dofs[2 * 2 + 0];
  CHECK(std::abs(r.displacements[apex_x]) < 1e-15);
}

TEST_CASE("stiffness matrix is symmetric") {
  const auto m = all_present_problem2();
  const auto K = assemble_stiffness(m);
  double scale = 0.0;
  for (int i = 0; i < K.n; ++i) scale = std::max(scale, std::abs(K.at(i, i)));
  for (int i = 0; i < K.n; ++i)
    for (int j = 0; j < K.n; ++j)
      CHECK(std::abs(K.at(i, j) - K.at(j, i)) <= 1e-12 * scale);
}

TEST_CASE("solution satisfies K u = F") {
  const auto m = all_present_problem2();
  const auto K = assemble_stiffness(m);
  const auto F = load_vector(m, K);
  const auto r = analyze(m);
  REQUIRE(r.stable);
  REQUIRE(static_cast<int>(r.displacements.size()) == K.n);

  double fscale = 0.0;
  for (double f : F) fscale = std::max(fscale, std::abs(f));
  for (int i = 0; i < K.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < K.n; ++j) s += K.at(i, j) * r.displacements[j];
    CHECK(std::abs(s - F[i]) <= 1e-9 * fscale);
  }
}

TEST_CASE("internal forces balance applied loads at every free node") {
  const auto m = all_present_problem2();
  const auto r = analyze(m);
  REQUIRE(r.stable);

  const int dim = m.dimension;
  std::vector<double> residual(m.nodes.size() * dim, 0.0);
  for (std::size_t e = 0; e < m.elements.size(); ++e) {
    const auto& el = m.elements[e];
    double dir[3] = {0, 0, 0};
    double L = 0.0;
    for (int k = 0; k < dim; ++k) {
      dir[k] = m.nodes[el.b][k] - m.nodes[el.a][k];
      L += dir[k] * dir[k];
    }
    L = std::sqrt(L);
    const double force = r.element_stresses[e] * el.area;  // tension positive
    for (int k = 0; k < dim; ++k) {
      const double c = dir[k] / L;
      residual[el.a * dim + k] += force * c;   // pulls a towards b
      residual[el.b * dim + k] -= force * c;   // pulls b towards a
    }
  }
  for (const auto& [dof, value] : m.loads)
    residual[dof.first * dim + dof.second] += value;

  double fscale = 0.0;
  for (const auto& [dof, value] : m.loads) {
    (void)dof;
    fscale = std::max(fscale, std::abs(value));
  }
  const auto dofs = free_dof_map(m);
  for (std::size_t d = 0; d < residual.size(); ++d) {
    if (dofs[d] < 0) continue;  // reactions live at supports
    CHECK(std::abs(residual[d]) <= 1e-9 * fscale);
  }
}

TEST_CASE("analysis is invariant under rigid rotation") {
  const double P = 8.0;
  const double theta = 0.7;
  const auto base = two_bar_v(P);

  TrussModel rot = base;
  const double c = std::cos(theta), s = std::sin(theta);
  for (auto& node : rot.nodes) {
    const double x = node[0], y = node[1];
    node[0] = c * x - s * y;
    node[1] = s * x + c * y;
  }
  rot.loads = {{{2, 0}, s * P}, {{2, 1}, -c * P}};  // rotated (0, -P)

  const auto rb = analyze(base);
  const auto rr = analyze(rot);
  REQUIRE(rb.stable);
  REQUIRE(rr.stable);
  for (std::size_t e = 0; e < rb.element_stresses.size(); ++e)
    CHECK(rr.element_stresses[e] ==
          doctest::Approx(rb.element_stresses[e]).epsilon(1e-9));

  // Displacement magnitude of the apex is rotation-invariant.
  const auto dofs = free_dof_map(base);
  const double bx = rb.displacements[dofs[2 * 2 + 0]];
  const double by = rb.displacements[dofs[2 * 2 + 1]];
  const double rx = rr.displacements[dofs[2 * 2 + 0]];
  const double ry = rr.displacements[dofs[2 * 2 + 1]];
  CHECK(std::sqrt(rx * rx + ry * ry) ==
        doctest::Approx(std::sqrt(bx * bx + by * by)).epsilon(1e-9));
}

TEST_CASE("mechanisms and missing supports are unstable, not errors") {
  SUBCASE("no supports at all") {
    auto m = two_bar_v(1.0);
    m.supports.clear();
    CHECK_FALSE(analyze(m).stable);
  }
  SUBCASE("collinear chain leaves a perpendicular mechanism") {
    TrussModel m;
    m.dimension = 2;
    m.nodes = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    m.elements = {{0, 1, 1.0, -1}, {1, 2, 1.0, -1}};
    m.supports = {{0, 0}, {0, 1}, {2, 0}, {2, 1}};
    m.loads = {{{1, 1}, -1.0}};
    m.elastic_modulus = 1e4;
    m.weight_density = 0.1;
    CHECK_FALSE(analyze(m).stable);

    // Triangulating the middle node restores stability.
    m.nodes.push_back({1, 1, 0});
    m.elements.push_back({1, 3, 1.0, -1});
    m.supports.insert({3, 0});
    m.supports.insert({3, 1});
    CHECK(analyze(m).stable);
  }
  SUBCASE("bar with a free perpendicular dof") {
    auto m = single_bar(1.0);
    m.supports.erase({1, 1});
    CHECK_FALSE(analyze(m).stable);
  }
}

TEST_CASE("pivot threshold separates near-collinear from open V") {
  auto make = [](double alpha) {
    TrussModel m;
    m.dimension = 2;
    m.nodes = {{0, 0, 0}, {2, 0, 0}, {1, std::tan(alpha), 0}};
    m.elements = {{0, 2, 1.0, -1}, {1, 2, 1.0, -1}};
    m.supports = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    m.loads = {{{2, 0}, 1.0}};
    m.elastic_modulus = 1e4;
    m.weight_density = 0.1;
    return m;
  };
  // Vertical/horizontal stiffness ratio at the apex is about tan^2(alpha);
  // the relative pivot threshold is 1e-10.
  CHECK_FALSE(analyze(make(1e-6)).stable);
  CHECK(analyze(make(1e-3)).stable);
}

TEST_CASE("malformed models throw invalid_argument") {
  const auto good = single_bar(1.0);

  auto m = good;
  m.elements[0].b = 7;
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.elements[0].b = 0;
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.elements[0].area = 0.0;
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.elements[0].area = -1.0;
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.elements.push_back({1, 0, 0.5, -1});  // duplicate, reversed
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.supports.insert({0, 2});  // z axis in a 2D model
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.loads[{9, 0}] = 1.0;
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.nodes[1] = m.nodes[0];  // zero-length element
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);

  m = good;
  m.dimension = 4;
  CHECK_THROWS_AS(analyze(m), std::invalid_argument);
}

TEST_CASE("empty system is vacuously stable") {
  TrussModel m;
  m.dimension = 2;
  const auto r = analyze(m);
  CHECK(r.stable);
  CHECK(r.displacements.empty());
  CHECK(r.element_stresses.empty());
}

TEST_CASE("zero-stiffness free dof from an isolated loaded node is unstable") {
  auto m = single_bar(1.0);
  m.nodes.push_back({30, 30, 0});
  m.loads[{2, 1}] = -2.0;  // load on a node with no incident element
  CHECK_FALSE(analyze(m).stable);
}
