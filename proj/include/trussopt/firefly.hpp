#pragma once

#include <cstdint>
#include <vector>

#include "trussopt/gating.hpp"
#include "trussopt/objective.hpp"
#include "trussopt/rng.hpp"

namespace trussopt {

struct Firefly {
  std::vector<double> x;  // position in design-variable space
  double f = kInfeasible; // cached objective of the most recent evaluation
};

struct FAParams {
  double beta0 = 2.0;   // attractiveness at zero distance
  double gamma = 1.0;   // light absorption coefficient
  double omega = 0.978; // cooling factor in (0, 1]
  int npop = 20;
  long long max_iterations = 1000;
};

// Gate consulted for every ordered pair (i, j) with f(x_j) < f(x_i). The
// driver asks permits() before moving, reports the outcome of an executed
// move, and always lets the gate re-test the pair afterwards.
class MoveGate {
 public:
  virtual ~MoveGate() = default;
  virtual bool permits(int i, int j) const = 0;
  virtual void record(int i, int j, bool improved) = 0;
  virtual void retest(int i, int j, RandomStream& rng) = 0;
};

// Baseline FA: always open, never tests, never touches the random stream.
class OpenGate final : public MoveGate {
 public:
  bool permits(int, int) const override { return true; }
  void record(int, int, bool) override {}
  void retest(int, int, RandomStream&) override {}
};

// Statistical gate: moves execute only while the stored P_ij flag is 1; after
// every improvement encounter a fresh mu0 is drawn from the run stream and
// the flag is recomputed from the ledger.
class StatisticalGate final : public MoveGate {
 public:
  StatisticalGate(int npop, TestConfig config)
      : ledger_(npop), config_(config) {}

  bool permits(int i, int j) const override {
    return ledger_.P[ledger_.index(i, j)] == 1;
  }
  void record(int i, int j, bool improved) override {
    record_outcome(ledger_, i, j, improved);
  }
  void retest(int i, int j, RandomStream& rng) override {
    const double mu0 = rng.uniform();
    const auto k = ledger_.index(i, j);
    ledger_.P[k] = static_cast<std::uint8_t>(
        hypothesis_test(ledger_.n[k], ledger_.success_sum[k], mu0, config_));
  }

  const CollaborationLedger& ledger() const { return ledger_; }

 private:
  CollaborationLedger ledger_;
  TestConfig config_;
};

struct RunRecord {
  Firefly final_best;
  EvalResult final_eval;
  std::vector<double> trace;            // best objective after each iteration
  std::vector<long long> eval_trace;    // cumulative evaluations per iteration
  long long evaluations = 0;
  long long improving_moves = 0;
  long long executed_moves = 0;
  long long blocked_encounters = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

// beta0 * exp(-gamma * r^2) on the normalized distance.
double attractiveness(double r_hat, const FAParams& params);

// ||xi - xj||_2 / r_max with r_max the diagonal of the bounded search box.
double normalized_distance(const std::vector<double>& xi,
                           const std::vector<double>& xj,
                           const DesignSpace& space);

// In-place hybrid update: attraction toward j plus a cooled random walk.
// Per component, three fresh draws rnd1, rnd2, theta; then clamp to
// [low_k, up_k].
void move(Firefly& i, const Firefly& j, long long tau, const FAParams& params,
          const DesignSpace& space, RandomStream& rng);

// The full swarm loop with a pluggable move gate.
RunRecord run(const ProblemDefinition& problem, const FAParams& params,
              MoveGate& gate, RandomStream& rng);

}  // namespace trussopt
