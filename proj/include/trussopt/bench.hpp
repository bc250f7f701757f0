#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trussopt/firefly.hpp"
#include "trussopt/objective.hpp"

namespace trussopt {

enum class GateMode { fa, sfa };

struct BatchStatistics {
  double min_weight = 0.0;
  double avg_weight = 0.0;
  double max_weight = 0.0;
  double std_weight = 0.0;
  double pct_within_2pct = 0.0;  // runs no heavier than 1.02 * batch minimum
  double avg_evaluations = 0.0;
  double avg_improving_moves = 0.0;
  double avg_wall_time = 0.0;
};

struct BatchResult {
  BatchStatistics stats;
  std::vector<RunRecord> runs;
};

// The four benchmark problems, generated from their frozen geometry.
// name in {problem1, problem2, problem3, problem4}; anything else throws
// std::invalid_argument.
ProblemDefinition builtin_problem(const std::string& name);

// Structured text problem files (sections: problem, dimension, nodes,
// supports, loads, material, constraints, design, elements, symmetry).
ProblemDefinition read_problem(std::istream& in);
ProblemDefinition load_problem(const std::string& path);  // throws std::runtime_error on I/O failure
void write_problem(const ProblemDefinition& problem, std::ostream& out);
void save_problem(const ProblemDefinition& problem, const std::string& path);

// Resolves a builtin name, else falls back to loading a definition file.
ProblemDefinition resolve_problem(const std::string& name_or_path);

// Places the given areas on their elements (keyed by unordered node pair),
// every other variable at 0, and runs the evaluation pipeline. Unknown pairs
// and conflicting assignments to one symmetry variable throw
// std::invalid_argument.
EvalResult verify_design(const ProblemDefinition& problem,
                         const std::map<std::pair<int, int>, double>& element_areas);

// `runs` independent runs seeded base_seed ... base_seed+runs-1, executed on
// up to `threads` workers (<=0 picks hardware concurrency). Statistics are
// aggregated sequentially after all runs finish, so results do not depend on
// the thread count.
BatchResult run_batch(const ProblemDefinition& problem, const FAParams& params,
                      GateMode mode, const TestConfig& test_config, int runs,
                      std::uint64_t base_seed, int threads = 0);

// Single run dispatch by gate mode (fa = OpenGate, sfa = StatisticalGate).
RunRecord run_single(const ProblemDefinition& problem, const FAParams& params,
                     GateMode mode, const TestConfig& test_config,
                     std::uint64_t seed);

// Area files for design verification: one "a-b area" entry per line, '#'
// comments. Throws std::runtime_error on unreadable or malformed input.
std::map<std::pair<int, int>, double> read_area_file(const std::string& path);

// Convergence trace with lossless numeric round-trip (17 significant digits):
// columns iteration, best_weight, cumulative_evaluations.
void write_trace_csv(const RunRecord& record, const std::string& path);

}  // namespace trussopt
