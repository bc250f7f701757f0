// Regenerates data/problemN.truss from the builtin definitions and writes the
// reference designs under data/golden/.  Run from anywhere:
//
//   export_problems <data-dir>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trussopt/bench.hpp"

namespace {

using AreaMap = std::map<std::pair<int, int>, double>;

// Reference designs.  Members whose stress sits on the allowable bound carry
// a +1e-6 area margin so the bound holds under solver roundoff.
AreaMap golden1() {
  return {
      {{0, 1}, 0.05},     {{1, 2}, 0.750001}, {{0, 5}, 1.500001},
      {{1, 5}, 1.060661}, {{1, 8}, 0.250001}, {{5, 8}, 1.060661},
      {{2, 8}, 0.559017}, {{8, 9}, 1.000001}, {{3, 4}, 0.05},
      {{2, 3}, 0.750001}, {{4, 7}, 1.500001}, {{3, 7}, 1.060661},
      {{3, 9}, 0.250001}, {{7, 9}, 1.060661}, {{2, 9}, 0.559017},
  };
}

AreaMap golden2() {
  return {
      {{0, 6}, 0.565686}, {{4, 8}, 0.565686}, {{6, 7}, 0.400001},
      {{7, 8}, 0.400001}, {{0, 7}, 0.447214}, {{4, 7}, 0.447214},
  };
}

AreaMap golden3() {
  return {
      {{0, 21}, 24.738634}, {{4, 23}, 24.738634}, {{0, 17}, 7.211103},
      {{4, 17}, 7.211103},  {{17, 21}, 5.656855}, {{17, 23}, 5.656855},
      {{21, 32}, 22.360680}, {{23, 32}, 22.360680},
  };
}

AreaMap golden4() {
  return {
      {{0, 13}, 1587.713241},
      {{2, 13}, 1587.713241},
      {{6, 13}, 1587.713241},
      {{8, 13}, 1587.713241},
  };
}

void write_areas(const std::string& path, const AreaMap& areas) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(2);
  }
  for (const auto& [pair, area] : areas) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", area);
    out << pair.first << "-" << pair.second << " " << buf << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir + "/golden");

  const std::vector<std::string> names = {"problem1", "problem2", "problem3",
                                          "problem4"};
  for (const auto& name : names) {
    const auto problem = trussopt::builtin_problem(name);
    trussopt::save_problem(problem, dir + "/" + name + ".truss");
    std::cout << name << ": " << problem.ground.nodes.size() << " nodes, "
              << problem.ground.candidate_elements.size() << " candidates, "
              << problem.space.D << " variables\n";
  }

  write_areas(dir + "/golden/problem1.areas", golden1());
  write_areas(dir + "/golden/problem2.areas", golden2());
  write_areas(dir + "/golden/problem3.areas", golden3());
  write_areas(dir + "/golden/problem4.areas", golden4());

  // Sanity: every golden design must verify as feasible on its problem.
  const AreaMap goldens[] = {golden1(), golden2(), golden3(), golden4()};
  for (int p = 0; p < 4; ++p) {
    const auto problem = trussopt::builtin_problem(names[p]);
    const auto eval = trussopt::verify_design(problem, goldens[p]);
    std::printf("%s golden: weight=%.6f feasible=%d max_stress=%.6f\n",
                names[p].c_str(), eval.weight, eval.feasible ? 1 : 0,
                eval.max_abs_stress);
    if (!eval.feasible) return 1;
  }
  return 0;
}
