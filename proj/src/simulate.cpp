#include "parkalloc/simulate.hpp"

#include <cmath>
#include <random>
#include <string>

namespace parkalloc {

namespace {

// Finalizer from the splitmix64 generator; spreads consecutive inputs into
// well-separated 64-bit states for the per-lot engines.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double exact_binomial_tail(std::int64_t n, double p, std::int64_t k) {
  if (n < 0) throw Error("binomial trial count must be non-negative");
  if (p < 0.0 || p > 1.0) throw Error("binomial probability outside [0,1]");
  if (k < 0) return 1.0;
  if (k >= n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  // Sum P(X = x) for x in (k, n] in log space, scaled by the largest term.
  double log_p = std::log(p);
  double log_q = std::log1p(-p);
  double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  double max_log = -HUGE_VAL;
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(n - k));
  for (std::int64_t x = k + 1; x <= n; ++x) {
    double lg = log_n_fact - std::lgamma(static_cast<double>(x) + 1.0) -
                std::lgamma(static_cast<double>(n - x) + 1.0) +
                static_cast<double>(x) * log_p +
                static_cast<double>(n - x) * log_q;
    logs.push_back(lg);
    if (lg > max_log) max_log = lg;
  }
  double sum = 0.0;
  for (double lg : logs) sum += std::exp(lg - max_log);
  double result = std::exp(max_log) * sum;
  return result > 1.0 ? 1.0 : result;
}

OverflowReport simulate_arrivals(const ProblemInstance& instance,
                                 const std::vector<std::int64_t>& permits,
                                 std::int64_t days, std::uint64_t seed) {
  if (days < 1) throw Error("simulation needs at least one day");
  if (static_cast<int>(permits.size()) != instance.lot_count()) {
    throw Error("permit vector size does not match lot count");
  }

  const double p = instance.arrival_probability;
  OverflowReport report;
  report.days = days;
  report.seed = seed;
  report.arrival_probability = p;

  for (int k = 0; k < instance.lot_count(); ++k) {
    LotOverflow lot;
    lot.lot = k;
    lot.permits = permits[k];
    lot.spaces = instance.lots[k].total_capacity();

    // Independent substream per lot: results are unaffected by lot order.
    std::mt19937_64 rng(mix64(seed + static_cast<std::uint64_t>(k + 1) *
                                         0x9E3779B97F4A7C15ULL));
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (std::int64_t day = 0; day < days; ++day) {
      std::int64_t arrivals = 0;
      for (std::int64_t holder = 0; holder < lot.permits; ++holder) {
        // 53-bit uniform in [0,1); strictly below p means the holder shows.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < p) ++arrivals;
      }
      sum += arrivals;
      sum_sq += arrivals * arrivals;
      if (arrivals > lot.spaces) ++lot.overflow_days;
    }

    double d = static_cast<double>(days);
    lot.overflow_rate = static_cast<double>(lot.overflow_days) / d;
    lot.mean_arrivals = static_cast<double>(sum) / d;
    double var =
        static_cast<double>(sum_sq) / d - lot.mean_arrivals * lot.mean_arrivals;
    lot.std_arrivals = var > 0.0 ? std::sqrt(var) : 0.0;
    lot.expected_mean = p * static_cast<double>(lot.permits);
    lot.expected_std =
        std::sqrt(p * (1.0 - p) * static_cast<double>(lot.permits));
    lot.exact_overflow = exact_binomial_tail(lot.permits, p, lot.spaces);
    report.lots.push_back(lot);
  }
  return report;
}

}  // namespace parkalloc
