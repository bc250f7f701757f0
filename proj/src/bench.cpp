#include "trussopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace trussopt {

namespace {

// Identity symmetry: one variable per candidate element.
void identity_variables(ProblemDefinition& p) {
  const int el = static_cast<int>(p.ground.candidate_elements.size());
  p.space.D = el;
  p.space.symmetry.assign(el, {});
  for (int e = 0; e < el; ++e) p.space.symmetry[e] = {e};
}

void uniform_bounds(ProblemDefinition& p) {
  p.space.low.assign(p.space.D, -p.space.area_max);
  p.space.up.assign(p.space.D, p.space.area_max);
}

bool segment_contains_node(const std::vector<std::array<double, 3>>& nodes,
                           int a, int b, int dim) {
  const auto& pa = nodes[a];
  const auto& pb = nodes[b];
  double ab[3] = {0, 0, 0};
  double ab2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    ab[k] = pb[k] - pa[k];
    ab2 += ab[k] * ab[k];
  }
  for (int c = 0; c < static_cast<int>(nodes.size()); ++c) {
    if (c == a || c == b) continue;
    double ac[3] = {0, 0, 0};
    for (int k = 0; k < dim; ++k) ac[k] = nodes[c][k] - pa[k];
    // Perpendicular distance test via cross product, then parameter range.
    const double cx = ab[1] * ac[2] - ab[2] * ac[1];
    const double cy = ab[2] * ac[0] - ab[0] * ac[2];
    const double cz = ab[0] * ac[1] - ab[1] * ac[0];
    if (std::sqrt(cx * cx + cy * cy + cz * cz) >= 1e-9) continue;
    double t = 0.0;
    for (int k = 0; k < dim; ++k) t += ac[k] * ab[k];
    t /= ab2;
    if (t > 1e-9 && t < 1.0 - 1e-9) return true;
  }
  return false;
}

// All node pairs whose connecting segment passes through no other node.
std::vector<std::pair<int, int>> clear_pairs(
    const std::vector<std::array<double, 3>>& nodes, int dim) {
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(nodes.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!segment_contains_node(nodes, a, b, dim)) pairs.push_back({a, b});
  return pairs;
}

double pair_length(const std::vector<std::array<double, 3>>& nodes,
                   std::pair<int, int> e, int dim) {
  double L2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = nodes[e.second][k] - nodes[e.first][k];
    L2 += d * d;
  }
  return std::sqrt(L2);
}

ProblemDefinition make_problem1() {
  ProblemDefinition p;
  p.name = "problem1";
  p.length_unit = "in";
  p.force_unit = "kip";
  p.ground.dimension = 2;
  const double c[][2] = {{0, 0},   {120, 0},   {240, 0},   {360, 0},
                         {480, 0}, {0, 120},   {240, 120}, {480, 120},
                         {120, 240}, {360, 240}, {120, 360}, {360, 360}};
  for (const auto& xy : c) p.ground.nodes.push_back({xy[0], xy[1], 0.0});

  // Figure-limited candidate set: clear sightlines up to 360 in, plus the two
  // long (3,1)-slope diagonals that appear in the drawing. 39 members total.
  for (auto e : clear_pairs(p.ground.nodes, 2)) {
    if (pair_length(p.ground.nodes, e, 2) <= 360.0 + 1e-9)
      p.ground.candidate_elements.push_back(e);
  }
  p.ground.candidate_elements.push_back({5, 9});
  p.ground.candidate_elements.push_back({7, 8});
  std::sort(p.ground.candidate_elements.begin(),
            p.ground.candidate_elements.end());

  p.ground.supports = {{0, 0}, {0, 1}, {4, 1}};
  p.ground.loads = {{{1, 1}, -20.0}, {{2, 1}, -20.0}, {{3, 1}, -20.0}};
  p.ground.elastic_modulus = 1e4;
  p.ground.weight_density = 0.1;
  p.constraints = {20.0, 2.0};
  p.space.area_min = 0.05;
  p.space.area_max = 2.25;
  identity_variables(p);
  uniform_bounds(p);
  return p;
}

ProblemDefinition make_problem2() {
  ProblemDefinition p;
  p.name = "problem2";
  p.length_unit = "in";
  p.force_unit = "kip";
  p.ground.dimension = 2;
  for (int r = 0; r < 2; ++r)
    for (int cc = 0; cc < 5; ++cc)
      p.ground.nodes.push_back({cc * 100.0, r * 100.0, 0.0});
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b)
      p.ground.candidate_elements.push_back({a, b});

  p.ground.supports = {{0, 0}, {0, 1}, {4, 0}, {4, 1}};
  p.ground.loads = {{{6, 1}, -10.0}, {{7, 1}, -10.0}, {{8, 1}, -10.0}};
  p.ground.elastic_modulus = 1e4;
  p.ground.weight_density = 0.1;
  p.constraints = {25.0, 2.0};
  p.space.area_min = 0.09;
  p.space.area_max = 1.0;
  identity_variables(p);
  uniform_bounds(p);
  return p;
}

ProblemDefinition make_problem3() {
  ProblemDefinition p;
  p.name = "problem3";
  p.length_unit = "in";
  p.force_unit = "kip";
  p.ground.dimension = 2;
  // 7 columns x 5 rows, node id = column*5 + row.
  for (int cc = 0; cc < 7; ++cc)
    for (int r = 0; r < 5; ++r)
      p.ground.nodes.push_back({cc * 60.0, r * 60.0, 0.0});
  for (int a = 0; a < 35; ++a)
    for (int b = a + 1; b < 35; ++b)
      p.ground.candidate_elements.push_back({a, b});

  p.ground.supports = {{0, 0}, {0, 1}, {4, 0}, {4, 1}};
  p.ground.loads = {{{32, 1}, -100.0}};
  p.ground.elastic_modulus = 1e4;
  p.ground.weight_density = 0.1;
  p.constraints = {5.0, 0.6};
  p.space.area_min = 0.09;
  p.space.area_max = 35.0;

  // Mirror symmetry across the middle horizontal line y = 120: row r <-> 4-r.
  auto mirror_node = [](int id) { return (id / 5) * 5 + (4 - id % 5); };
  const int el = static_cast<int>(p.ground.candidate_elements.size());
  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < el; ++e) index[p.ground.candidate_elements[e]] = e;

  std::vector<int> variable_of(el, -1);
  p.space.symmetry.clear();
  for (int e = 0; e < el; ++e) {
    if (variable_of[e] >= 0) continue;
    const auto& [a, b] = p.ground.candidate_elements[e];
    const int ma = mirror_node(a);
    const int mb = mirror_node(b);
    const int me = index.at({std::min(ma, mb), std::max(ma, mb)});
    const int var = static_cast<int>(p.space.symmetry.size());
    variable_of[e] = var;
    if (me == e) {
      p.space.symmetry.push_back({e});
    } else {
      variable_of[me] = var;
      p.space.symmetry.push_back({e, me});
    }
  }
  p.space.D = static_cast<int>(p.space.symmetry.size());
  uniform_bounds(p);
  return p;
}

ProblemDefinition make_problem4() {
  ProblemDefinition p;
  p.name = "problem4";
  p.length_unit = "mm";
  p.force_unit = "N";
  p.ground.dimension = 3;
  // 3x3x2 grid, 2000 mm spacing, node id = level*9 + j*3 + i.
  for (int level = 0; level < 2; ++level)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        p.ground.nodes.push_back({i * 2000.0, j * 2000.0, level * 2000.0});
  for (int a = 0; a < 18; ++a)
    for (int b = a + 1; b < 18; ++b)
      p.ground.candidate_elements.push_back({a, b});

  for (int corner : {0, 2, 6, 8})
    for (int axis = 0; axis < 3; ++axis) p.ground.supports.insert({corner, axis});
  p.ground.loads = {{{13, 2}, -550e3}};  // top-face center, downward
  p.ground.elastic_modulus = 2e5;   // MPa
  p.ground.weight_density = 7.7e-5; // N/mm^3
  p.constraints = {150.0, 20.0};
  p.space.area_min = 0.0;
  p.space.area_max = 2000.0;
  identity_variables(p);
  uniform_bounds(p);
  return p;
}

}  // namespace

ProblemDefinition builtin_problem(const std::string& name) {
  if (name == "problem1") return make_problem1();
  if (name == "problem2") return make_problem2();
  if (name == "problem3") return make_problem3();
  if (name == "problem4") return make_problem4();
  throw std::invalid_argument("unknown builtin problem: " + name);
}

ProblemDefinition resolve_problem(const std::string& name_or_path) {
  if (name_or_path == "problem1" || name_or_path == "problem2" ||
      name_or_path == "problem3" || name_or_path == "problem4")
    return builtin_problem(name_or_path);
  return load_problem(name_or_path);
}

EvalResult verify_design(const ProblemDefinition& problem,
                         const std::map<std::pair<int, int>, double>& element_areas) {
  const auto& elements = problem.ground.candidate_elements;
  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < static_cast<int>(elements.size()); ++e)
    index[elements[e]] = e;

  std::vector<int> variable_of(elements.size(), -1);
  for (int k = 0; k < problem.space.D; ++k)
    for (int e : problem.space.symmetry[k]) variable_of[e] = k;

  std::vector<double> x(problem.space.D, 0.0);
  std::vector<char> assigned(problem.space.D, 0);
  for (const auto& [pair, area] : element_areas) {
    const std::pair<int, int> canon{std::min(pair.first, pair.second),
                                    std::max(pair.first, pair.second)};
    auto it = index.find(canon);
    if (it == index.end())
      throw std::invalid_argument("unknown element " +
                                  std::to_string(pair.first) + "-" +
                                  std::to_string(pair.second));
    const int var = variable_of[it->second];
    if (assigned[var] && x[var] != area)
      throw std::invalid_argument(
          "conflicting areas for one symmetry variable (element " +
          std::to_string(pair.first) + "-" + std::to_string(pair.second) + ")");
    x[var] = area;
    assigned[var] = 1;
  }

  EvalCounter counter{0};
  return evaluate(x, problem, counter);
}

RunRecord run_single(const ProblemDefinition& problem, const FAParams& params,
                     GateMode mode, const TestConfig& test_config,
                     std::uint64_t seed) {
  RandomStream rng(seed);
  if (mode == GateMode::fa) {
    OpenGate gate;
    return run(problem, params, gate, rng);
  }
  StatisticalGate gate(params.npop, test_config);
  return run(problem, params, gate, rng);
}

BatchResult run_batch(const ProblemDefinition& problem, const FAParams& params,
                      GateMode mode, const TestConfig& test_config, int runs,
                      std::uint64_t base_seed, int threads) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");

  BatchResult result;
  result.runs.resize(runs);

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, runs));

  std::atomic<int> next{0};
  auto drain = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= runs) break;
      result.runs[r] =
          run_single(problem, params, mode, test_config, base_seed + r);
    }
  };
  if (workers == 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }

  BatchStatistics& s = result.stats;
  s.min_weight = result.runs[0].final_best.f;
  s.max_weight = s.min_weight;
  double sum = 0.0;
  for (const auto& r : result.runs) {
    const double w = r.final_best.f;
    s.min_weight = std::min(s.min_weight, w);
    s.max_weight = std::max(s.max_weight, w);
    sum += w;
    s.avg_evaluations += static_cast<double>(r.evaluations);
    s.avg_improving_moves += static_cast<double>(r.improving_moves);
    s.avg_wall_time += r.wall_time_s;
  }
  const double n = static_cast<double>(runs);
  s.avg_weight = sum / n;
  s.avg_evaluations /= n;
  s.avg_improving_moves /= n;
  s.avg_wall_time /= n;

  double ss = 0.0;
  for (const auto& r : result.runs) {
    const double d = r.final_best.f - s.avg_weight;
    ss += d * d;
  }
  s.std_weight = runs > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

  int within = 0;
  for (const auto& r : result.runs)
    if (r.final_best.f <= 1.02 * s.min_weight) ++within;
  s.pct_within_2pct = 100.0 * within / n;

  return result;
}

}  // namespace trussopt
