#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mls/family.hpp"
#include "mls/problems/registry.hpp"
#include "mls/rational.hpp"

namespace mls {

/// Ordinary least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

struct RatePoint {
  int n = 0;
  std::uint64_t calls = 0;       // extension calls of the full deterministic schedule
  double mean_branch_nodes = 0;  // averaged over the trials
  double predicted = 0;          // (2 - 1/c)^n
};

struct RateFit {
  std::vector<RatePoint> points;
  Rational c;
  double slope = 0;   // of log2(calls) against n
  double target = 0;  // log2(2 - 1/c)
};

/// For each n: `trials` random instances, each decided by deterministic_search
/// with budget n and no early stop, so every scheduled call is made.
RateFit bench_rates(ProblemKind kind, int n_lo, int n_hi, int trials, std::uint64_t seed, std::optional<Rational> c,
                    FamilySource& families);

struct ScheduleRow {
  int n = 0;
  int trial = 0;
  int k_prime = 0;
  int split = 0;
  BigInt repetitions;         // from the plan
  std::uint64_t measured = 0;  // calls the randomized driver made
  bool match() const { return BigInt(measured) == repetitions; }
};

/// Runs randomized_search with budget n and no early stop on random
/// instances and records, per k', scheduled against measured repetitions.
std::vector<ScheduleRow> bench_schedule(ProblemKind kind, int n_lo, int n_hi, int trials, std::uint64_t seed,
                                        std::optional<Rational> c);

}  // namespace mls
