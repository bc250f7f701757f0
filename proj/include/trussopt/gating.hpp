#pragma once

#include <cstdint>
#include <vector>

#include "trussopt/rng.hpp"

namespace trussopt {

// Per-ordered-pair collaboration history. Every pair starts with one
// imaginary successful move (n = 1, success_sum = 1, P = 1), which guarantees
// the very first real test can pass.
struct CollaborationLedger {
  int npop = 0;
  std::vector<long long> n;            // move counts, npop*npop
  std::vector<long long> success_sum;  // score totals, npop*npop
  std::vector<std::uint8_t> P;         // gate flags, npop*npop

  explicit CollaborationLedger(int npop_)
      : npop(npop_),
        n(static_cast<std::size_t>(npop_) * npop_, 1),
        success_sum(static_cast<std::size_t>(npop_) * npop_, 1),
        P(static_cast<std::size_t>(npop_) * npop_, 1) {}

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * npop + j;
  }
};

struct TestConfig {
  double critical_value = -1.65;  // fixed left-tail critical value (< 0)
};

// One-sample t statistic for a Bernoulli score history against mu0:
//   mbar = success_sum / n,  s = sqrt(n*mbar*(1-mbar)/(n-1)),
//   t = (mbar - mu0) / (s / sqrt(n)).
// Degenerate cases (n = 1 or s = 0) return +inf when mbar >= mu0, else -inf.
double t_statistic(long long n, long long success_sum, double mu0);

// Left-tailed test of H0: mu_ij >= mu0. Returns 0 (move blocked) iff
// t < critical_value, else 1.
int hypothesis_test(long long n, long long success_sum, double mu0,
                    const TestConfig& config);

// After an executed move of i toward j: n += 1, success_sum += improved.
void record_outcome(CollaborationLedger& ledger, int i, int j, bool improved);

}  // namespace trussopt
