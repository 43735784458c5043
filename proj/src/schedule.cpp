#include "mls/schedule.hpp"

#include "mls/error.hpp"

namespace mls {

BigInt SearchSchedule::total_repetitions() const {
  BigInt total = 0;
  for (const auto& p : plans) total += p.repetitions;
  return total;
}

Rational split_objective(int n_eff, int k_prime, int t, const Rational& c) {
  return Rational(binomial(n_eff, t), binomial(k_prime, t)) * pow(c, k_prime - t);
}

int choose_split(int n_eff, int k_prime, const Rational& c) {
  if (c <= 1) throw Error(ErrorCode::InvalidParams, "split base must exceed 1, got " + to_string(c));
  if (k_prime < 0 || k_prime > n_eff)
    throw Error(ErrorCode::InvalidParams, "target size " + std::to_string(k_prime) + " outside [0, " + std::to_string(n_eff) + "]");
  // Exact scan; the objective is evaluated at every t so ties resolve to
  // the smallest t without relying on unimodality.
  int best_t = 0;
  Rational best = split_objective(n_eff, k_prime, 0, c);
  for (int t = 1; t <= k_prime; ++t) {
    Rational v = split_objective(n_eff, k_prime, t, c);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

SplitPlan make_plan(int n_eff, int k_prime, const Rational& c) {
  SplitPlan plan;
  plan.target_size = k_prime;
  plan.n_eff = n_eff;
  plan.split = choose_split(n_eff, k_prime, c);
  plan.success_prob = Rational(binomial(k_prime, plan.split), binomial(n_eff, plan.split));
  plan.repetitions = ceil(Rational(1) / plan.success_prob);
  return plan;
}

SearchSchedule build_schedule(int n_eff, int k, const SystemContract& contract, std::uint64_t seed) {
  contract.validate();
  if (k < 0 || k > n_eff)
    throw Error(ErrorCode::InvalidParams, "budget " + std::to_string(k) + " outside [0, " + std::to_string(n_eff) + "]");
  SearchSchedule schedule;
  schedule.master_seed = seed;
  schedule.mode = contract.mode;
  for (int kp = 0; kp <= k; ++kp) schedule.plans.push_back(make_plan(n_eff, kp, contract.extension_base));
  return schedule;
}

}  // namespace mls
