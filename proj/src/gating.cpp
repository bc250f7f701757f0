#include "trussopt/gating.hpp"

#include <cmath>
#include <limits>

namespace trussopt {

double t_statistic(long long n, long long success_sum, double mu0) {
  const double mbar = static_cast<double>(success_sum) / static_cast<double>(n);
  if (n <= 1 || success_sum == 0 || success_sum == n) {
    // Sample deviation is zero (or undefined for n = 1): the statistic
    // degenerates to a sign.
    return mbar >= mu0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
  }
  const double nd = static_cast<double>(n);
  const double s = std::sqrt(nd * mbar * (1.0 - mbar) / (nd - 1.0));
  return (mbar - mu0) / (s / std::sqrt(nd));
}

int hypothesis_test(long long n, long long success_sum, double mu0,
                    const TestConfig& config) {
  return t_statistic(n, success_sum, mu0) < config.critical_value ? 0 : 1;
}

void record_outcome(CollaborationLedger& ledger, int i, int j, bool improved) {
  const std::size_t k = ledger.index(i, j);
  ledger.n[k] += 1;
  if (improved) ledger.success_sum[k] += 1;
}

}  // namespace trussopt
