#pragma once

#include <cstdint>
#include <vector>

#include "parkalloc/core.hpp"

// Monte Carlo audit of an issuance: each permit holder shows up
// independently with the arrival probability, and a lot overflows on a day
// when arrivals exceed physical spaces. Closed-form binomial tails back the
// empirical rates.

namespace parkalloc {

struct LotOverflow {
  int lot = 0;                     // 0-based
  std::int64_t permits = 0;        // issued permits (coin flips per day)
  std::int64_t spaces = 0;         // physical spaces
  std::int64_t overflow_days = 0;  // days with arrivals > spaces
  double overflow_rate = 0.0;      // overflow_days / days
  double exact_overflow = 0.0;     // P(Binomial(permits, p) > spaces)
  double mean_arrivals = 0.0;      // empirical
  double std_arrivals = 0.0;       // empirical, population form
  double expected_mean = 0.0;      // p * permits
  double expected_std = 0.0;       // sqrt(p * (1-p) * permits)
};

struct OverflowReport {
  std::vector<LotOverflow> lots;
  std::int64_t days = 0;
  std::uint64_t seed = 0;
  double arrival_probability = 0.0;
};

// P(Binomial(n, p) > k), summed in log space so large n stays finite.
// k < 0 gives 1; k >= n gives 0.
double exact_binomial_tail(std::int64_t n, double p, std::int64_t k);

// Simulates `days` independent days. Each lot draws from its own
// deterministic substream derived from `seed`, so a lot's numbers do not
// depend on lot order or on how many other lots run. Spaces per lot are
// the lot's total capacity across permit types.
OverflowReport simulate_arrivals(const ProblemInstance& instance,
                                 const std::vector<std::int64_t>& permits,
                                 std::int64_t days, std::uint64_t seed);

}  // namespace parkalloc
