// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every random choice is seeded, so reruns are identical.

#include <boost/math/distributions/binomial.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mls/bench.hpp"
#include "mls/driver.hpp"
#include "mls/enumerate.hpp"
#include "mls/family.hpp"
#include "mls/oracle.hpp"
#include "mls/problems/generators.hpp"
#include "mls/problems/registry.hpp"
#include "mls/sampling.hpp"
#include "mls/schedule.hpp"

using namespace mls;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

FamilySource& families() {
  static FamilySource src;
  return src;
}

const ProblemKind kKinds[] = {ProblemKind::HittingSet, ProblemKind::Cnf, ProblemKind::Tournament};

std::shared_ptr<const ImplicitSetSystem> backend(ProblemKind kind, int n, gen::Rng& rng) {
  switch (kind) {
    case ProblemKind::HittingSet: return std::make_shared<HittingSetSystem>(gen::random_hitting_set(n, n, 3, rng));
    case ProblemKind::Cnf: return std::make_shared<CnfSystem>(gen::random_cnf(n, n, 3, 0.6, rng));
    case ProblemKind::Tournament: break;
  }
  return std::make_shared<TournamentSystem>(gen::random_tournament(n, rng));
}

// Rational just below ln n, so bounds built from it are conservative.
Rational ln_lower(int n) {
  const auto scaled = static_cast<long long>(std::floor(std::log(static_cast<double>(n)) * 1e12)) - 1;
  return scaled <= 0 ? Rational(0) : Rational(BigInt(scaled), BigInt(1000000000000LL));
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  gen::Rng rng(101);
  std::uint64_t checks = 0, disagreements = 0;
  for (ProblemKind kind : kKinds)
    for (int i = 0; i < 500; ++i) {
      const int n = 1 + i % 12;
      auto sys = backend(kind, n, rng);
      for (int k = 0; k <= n; ++k) {
        const bool brute = brute_subset_search(*sys, ElementSet{}, k).decision == Decision::Yes;
        auto r = deterministic_search(*sys, ElementSet{}, k, families());
        bool ok = r.yes() == brute;
        if (r.yes()) ok = ok && r.witness && sys->is_member(*r.witness) && r.witness->size() <= k;
        disagreements += ok ? 0 : 1;
        ++checks;
      }
    }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << checks << " (instance, k) pairs, " << disagreements << " disagreements, " << secs << " s";
  return {disagreements == 0 && secs < 60, d.str()};
}

Outcome one_sided_error() {
  gen::Rng rng(202);
  std::uint64_t pairs = 0, false_yes = 0;
  int instance = 0;
  while (pairs < 10000) {
    const ProblemKind kind = kKinds[instance % 3];
    const int n = 4 + instance % 9;
    ++instance;
    auto sys = backend(kind, n, rng);
    auto full = brute_subset_search(*sys, ElementSet{}, n);
    // The tightest no-instance: one below the optimum, or any k if F_I is empty.
    const int k = full.best_witness ? full.best_witness->size() - 1 : static_cast<int>(rng() % (n + 1));
    if (k < 0) continue;
    if (brute_subset_search(*sys, ElementSet{}, k).decision == Decision::Yes) continue;
    for (std::uint64_t seed = 0; seed < 25 && pairs < 10000; ++seed, ++pairs)
      if (randomized_search(*sys, ElementSet{}, k, mix64(seed ^ (static_cast<std::uint64_t>(instance) << 20))).yes())
        ++false_yes;
  }
  std::ostringstream d;
  d << pairs << " (instance, seed) pairs, " << false_yes << " false yes";
  return {false_yes == 0, d.str()};
}

Outcome success_rate() {
  gen::Rng rng(303);
  const int trials = 100;
  int yes = 0;
  for (int i = 0; i < trials; ++i) {
    const ElementSet planted = gen::random_subset(14, 5, rng);
    HittingSetSystem h(gen::planted_hitting_set(14, 28, 3, planted, rng));
    if (randomized_search(h, ElementSet{}, 5, rng()).yes()) ++yes;
  }
  // Two-sided 99% Clopper-Pearson interval.
  const double lower = boost::math::binomial_distribution<>::find_lower_bound_on_p(trials, yes, 0.005);
  std::ostringstream d;
  d << yes << "/" << trials << " yes, 99% lower bound " << lower;
  return {lower > 0.5, d.str()};
}

Outcome covering_property() {
  std::uint64_t families_checked = 0;
  std::string failure;
  for (int n = 0; n <= 14; ++n)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p; ++q)
        for (bool fallback : {true, false}) {
          const auto fam = build_bucketed(n, p, q, {fallback});
          ++families_checked;
          if (!verify_covering(fam, true).covered && failure.empty())
            failure = "(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
        }
  // The (n, k', t) triples a c = 3 schedule requests: all of them at n = 20,
  // and k' <= 12 at n = 24, where larger k' saturate to a full q-layer of
  // over a million sets.
  std::vector<std::tuple<int, int, int>> triples{{24, 6, 3}, {20, 8, 3}};
  for (int n : {20, 24})
    for (int p = 1; p <= (n == 24 ? 12 : n); ++p) triples.emplace_back(n, p, choose_split(n, p, Rational(3)));
  std::uint64_t misses = 0, sampled_families = 0;
  for (auto [n, p, q] : triples) {
    const auto fam = build_bucketed(n, p, q);
    auto res = verify_covering(fam, false, static_cast<std::uint64_t>(n * 100 + p), 100000);
    ++sampled_families;
    if (!res.covered) ++misses;
  }
  std::ostringstream d;
  d << families_checked << " families exhaustive for n <= 14, " << sampled_families
    << " families at n in {20,24} with 1e5 samples each, " << misses << " sampled misses";
  if (!failure.empty()) d << ", first uncovered " << failure;
  return {failure.empty() && misses == 0, d.str()};
}

Outcome greedy_size_bound() {
  std::uint64_t checked = 0;
  std::string failure;
  for (int n = 1; n <= 14; ++n) {
    const Rational lnn = ln_lower(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p; ++q) {
        const auto fam = build_greedy(n, p, q);
        const Rational slack = (1 + p * lnn) * (1 + p * lnn);
        ++checked;
        if (Rational(fam.size()) > kappa(n, p, q) * slack && failure.empty())
          failure = "(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
      }
  }
  std::ostringstream d;
  d << checked << " triples";
  if (!failure.empty()) d << ", first violation " << failure;
  return {failure.empty(), d.str()};
}

Outcome uniformity() {
  struct Row {
    ProblemKind kind;
    int n_max;
    int trials;
  };
  gen::Rng rng(606);
  std::uint64_t instances = 0;
  double worst = 0;
  std::string failure;
  for (Row row : {Row{ProblemKind::HittingSet, 12, 4}, Row{ProblemKind::Cnf, 10, 6}, Row{ProblemKind::Tournament, 10, 6}})
    for (int n = 1; n <= row.n_max; ++n)
      for (int t = 0; t < row.trials; ++t) {
        // Exact 3-sets for hitting set; CNF clauses have width at most 3.
        std::shared_ptr<const ImplicitSetSystem> sys =
            row.kind == ProblemKind::HittingSet
                ? std::make_shared<HittingSetSystem>(gen::random_uniform_hitting_set(n, n, std::min(3, n), rng))
                : backend(row.kind, n, rng);
        auto report = check_uniformity(*sys, Rational(3));
        ++instances;
        worst = std::max(worst, report.max_ratio);
        if (!report.passed && failure.empty()) failure = to_string(row.kind) + " n=" + std::to_string(n);
      }
  std::ostringstream d;
  d << instances << " instances, max |slice|/c^k " << worst;
  if (!failure.empty()) d << ", first failure " << failure;
  return {failure.empty(), d.str()};
}

Outcome counting_bound() {
  gen::Rng rng(707);
  std::uint64_t instances = 0;
  double worst = 0;
  std::string failure;
  for (ProblemKind kind : {ProblemKind::Tournament, ProblemKind::HittingSet})
    for (int i = 0; i < 200; ++i) {
      const int n = 1 + i % 10;
      auto sys = kind == ProblemKind::Tournament
                     ? std::shared_ptr<const ImplicitSetSystem>(std::make_shared<TournamentSystem>(gen::random_tournament(n, rng)))
                     : std::make_shared<HittingSetSystem>(gen::random_uniform_hitting_set(n, 2 * n, std::min(3, n), rng));
      auto report = check_counting_bound(*sys, Rational(3));
      ++instances;
      worst = std::max(worst, report.ratio);
      if (!report.passed && failure.empty()) failure = to_string(kind) + " n=" + std::to_string(n);
    }
  std::ostringstream d;
  d << instances << " instances, max census / ((5/3)^n n^2) " << worst;
  if (!failure.empty()) d << ", first failure " << failure;
  return {failure.empty(), d.str()};
}

Outcome enumeration_completeness() {
  gen::Rng rng(808);
  std::uint64_t instances = 0, mismatches = 0, sets = 0;
  for (ProblemKind kind : kKinds)
    for (int i = 0; i < 100; ++i) {
      const int n = 1 + i % 10;
      auto sys = backend(kind, n, rng);
      const auto got = enumerate_all_sorted(*sys, Deterministic{}, families());
      const auto expect = brute_enumerate_minimal(*sys).enumerated.value();
      ++instances;
      sets += expect.size();
      if (got != expect) ++mismatches;
    }
  std::ostringstream d;
  d << instances << " instances, " << sets << " minimal sets, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

Outcome growth_rate() {
  const auto start = Clock::now();
  const RateFit fit = bench_rates(ProblemKind::Tournament, 10, 18, 3, 909, Rational(3), families());
  const double secs = seconds_since(start);
  const double lo = fit.target - 0.30, hi = fit.target + 0.45;
  std::ostringstream d;
  d << "slope " << fit.slope << " in [" << lo << ", " << hi << "], " << secs << " s, calls";
  for (const RatePoint& p : fit.points) d << " " << p.n << ":" << p.calls;
  return {fit.slope >= lo && fit.slope <= hi && secs < 600, d.str()};
}

Outcome schedule_exactness() {
  std::uint64_t rows = 0, mismatches = 0;
  std::uint64_t seed = 1010;
  for (ProblemKind kind : kKinds) {
    for (const ScheduleRow& r : bench_schedule(kind, 6, 14, 2, seed++, std::nullopt)) {
      ++rows;
      if (!r.match()) ++mismatches;
    }
    for (const ScheduleRow& r : bench_schedule(kind, 8, 12, 1, seed++, parse_rational("2.562"))) {
      ++rows;
      if (!r.match()) ++mismatches;
    }
  }
  std::ostringstream d;
  d << rows << " plans, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

Outcome reduction_consistency() {
  gen::Rng rng(1111);
  std::uint64_t checks = 0, disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 12;
    const auto inst = gen::random_hitting_set(n, n + static_cast<int>(rng() % 6), 3, rng);
    HittingSetSystem h(inst);
    CnfSystem f(cnf_from_hitting_set(inst));
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    const bool via_hs = deterministic_search(h, ElementSet{}, k, families()).yes();
    const bool via_cnf = deterministic_search(f, ElementSet{}, k, families()).yes();
    const bool brute = brute_subset_search(f, ElementSet{}, k).decision == Decision::Yes;
    ++checks;
    if (via_hs != via_cnf || via_cnf != brute) ++disagreements;
  }
  std::ostringstream d;
  d << checks << " instances, " << disagreements << " disagreements";
  return {disagreements == 0, d.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"one-sided error", one_sided_error},
      {"success rate", success_rate},
      {"covering property", covering_property},
      {"greedy size bound", greedy_size_bound},
      {"uniformity", uniformity},
      {"counting bound", counting_bound},
      {"enumeration completeness", enumeration_completeness},
      {"growth-rate trend", growth_rate},
      {"schedule exactness", schedule_exactness},
      {"reduction consistency", reduction_consistency},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    std::printf("%s %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
