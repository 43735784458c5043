#pragma once

#include <cstdint>
#include <vector>

#include "mls/rational.hpp"
#include "mls/system.hpp"

namespace mls {

/// How many elements to sample before handing a target size k' to the
/// extension oracle, and how often to repeat.
struct SplitPlan {
  int target_size = 0;    // k'
  int split = 0;          // t
  int n_eff = 0;          // n - |X|
  Rational success_prob;  // C(k', t) / C(n_eff, t)
  BigInt repetitions;     // ceil(1 / success_prob)
};

struct SearchSchedule {
  std::vector<SplitPlan> plans;  // plans[k'] for k' = 0..k
  std::uint64_t master_seed = 0;
  OracleMode mode = OracleMode::Strict;

  BigInt total_repetitions() const;
};

/// C(n_eff, t) / C(k', t) * c^(k' - t), the expected cost of one plan.
Rational split_objective(int n_eff, int k_prime, int t, const Rational& c);

/// argmin over t in [0, k'] of split_objective, smallest t on ties.
/// Throws InvalidParams if c <= 1 or not 0 <= k' <= n_eff.
int choose_split(int n_eff, int k_prime, const Rational& c);

SplitPlan make_plan(int n_eff, int k_prime, const Rational& c);

/// One plan per k' = 0..k. Throws InvalidParams for k outside [0, n_eff].
SearchSchedule build_schedule(int n_eff, int k, const SystemContract& contract, std::uint64_t seed);

}  // namespace mls
