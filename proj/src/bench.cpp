#include "mls/bench.hpp"

#include <cmath>

#include "mls/driver.hpp"
#include "mls/error.hpp"
#include "mls/sampling.hpp"

namespace mls {

namespace {

std::shared_ptr<const ImplicitSetSystem> bench_system(ProblemKind kind, int n, const std::optional<Rational>& c,
                                                      gen::Rng& rng) {
  auto sys = random_system(kind, n, rng);
  if (c) return std::make_shared<ContractOverride>(sys, *c);
  return sys;
}

void check_range(int n_lo, int n_hi, int trials) {
  if (n_lo < 1 || n_hi < n_lo || n_hi > kMaxUniverse || trials < 1)
    throw Error(ErrorCode::InvalidParams, "need 1 <= A <= B <= 64 and at least one trial");
}

}  // namespace

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidParams, "slope needs two or more points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw Error(ErrorCode::InvalidParams, "slope needs distinct x values");
  return sxy / sxx;
}

RateFit bench_rates(ProblemKind kind, int n_lo, int n_hi, int trials, std::uint64_t seed, std::optional<Rational> c,
                    FamilySource& families) {
  check_range(n_lo, n_hi, trials);
  RateFit fit;
  std::vector<double> xs, ys;
  for (int n = n_lo; n <= n_hi; ++n) {
    gen::Rng rng(mix64(seed ^ static_cast<std::uint64_t>(n)));
    RatePoint point;
    point.n = n;
    double nodes = 0;
    for (int trial = 0; trial < trials; ++trial) {
      auto sys = bench_system(kind, n, c, rng);
      fit.c = sys->contract().extension_base;
      SearchResult r = deterministic_search(*sys, ElementSet{}, n, families, {1, false});
      point.calls = r.oracle_calls;
      nodes += static_cast<double>(r.branch_nodes);
    }
    point.mean_branch_nodes = nodes / trials;
    point.predicted = std::pow(to_double(Rational(2) - Rational(1) / fit.c), n);
    xs.push_back(n);
    ys.push_back(std::log2(static_cast<double>(point.calls)));
    fit.points.push_back(point);
  }
  fit.target = std::log2(to_double(Rational(2) - Rational(1) / fit.c));
  fit.slope = xs.size() >= 2 ? least_squares_slope(xs, ys) : 0;
  return fit;
}

std::vector<ScheduleRow> bench_schedule(ProblemKind kind, int n_lo, int n_hi, int trials, std::uint64_t seed,
                                        std::optional<Rational> c) {
  check_range(n_lo, n_hi, trials);
  std::vector<ScheduleRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    gen::Rng rng(mix64(seed ^ static_cast<std::uint64_t>(n)));
    for (int trial = 0; trial < trials; ++trial) {
      auto sys = bench_system(kind, n, c, rng);
      const std::uint64_t run_seed = mix64(seed + static_cast<std::uint64_t>(n) * 1000003ULL + static_cast<std::uint64_t>(trial));
      SearchResult r = randomized_search(*sys, ElementSet{}, n, run_seed, {1, false});
      for (const SplitPlan& plan : r.schedule.plans) {
        ScheduleRow row;
        row.n = n;
        row.trial = trial;
        row.k_prime = plan.target_size;
        row.split = plan.split;
        row.repetitions = plan.repetitions;
        row.measured = r.calls_per_plan[static_cast<std::size_t>(plan.target_size)];
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace mls
