#include "mls/driver.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "mls/error.hpp"
#include "mls/sampling.hpp"

namespace mls {

namespace {

using Clock = std::chrono::steady_clock;

struct Probe {
  ElementSet sampled;  // Y
  int budget = 0;      // k' - t
  ExtensionOutcome outcome;
};

struct PlanRun {
  std::uint64_t calls = 0;
  std::uint64_t nodes = 0;
  std::optional<Probe> hit;
};

// Evaluates calls 0..count-1 and reports the lowest-index yes. With several
// threads, calls run in blocks and are accounted in index order, so the
// counters match a sequential run exactly.
template <class Eval>
PlanRun run_plan(std::uint64_t count, int threads, bool stop, const Eval& eval) {
  PlanRun run;
  auto account = [&](Probe&& p) {
    ++run.calls;
    run.nodes += p.outcome.stats.nodes;
    if (p.outcome.yes() && !run.hit) run.hit = std::move(p);
    return stop && run.hit.has_value();
  };
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (account(eval(i))) break;
    return run;
  }
  const auto block = static_cast<std::uint64_t>(threads) * 8;
  std::vector<std::optional<Probe>> slots(block);
  for (std::uint64_t start = 0; start < count; start += block) {
    const std::uint64_t len = std::min(block, count - start);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    const auto spawn = static_cast<std::uint64_t>(threads) < len ? static_cast<std::uint64_t>(threads) : len;
    for (std::uint64_t w = 0; w < spawn; ++w) {
      workers.emplace_back([&] {
        try {
          for (std::uint64_t j = next++; j < len; j = next++) slots[j] = eval(start + j);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
    for (std::uint64_t j = 0; j < len; ++j)
      if (account(std::move(*slots[j]))) return run;
  }
  return run;
}

std::uint64_t checked_count(const BigInt& reps) {
  if (reps > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw Error(ErrorCode::TooLarge, "repetition count " + reps.str() + " does not fit in 64 bits");
  return reps.convert_to<std::uint64_t>();
}

// Turns the winning oracle answer into a full solution.
void accept(const ImplicitSetSystem& system, const SystemContract& contract, ElementSet base, const Probe& p,
            SearchResult& result) {
  result.decision = Decision::Yes;
  const ElementSet partial = base | p.sampled;
  const bool strict = contract.mode == OracleMode::Strict;
  if (p.outcome.witness) {
    const ElementSet w = *p.outcome.witness;
    const ElementSet full = partial | w;
    if (w.disjoint(partial) && w.size() <= p.budget && system.is_member(full)) {
      result.witness = full;
      return;
    }
    if (strict) throw Error(ErrorCode::InvalidParams, system.kind() + " oracle returned an invalid witness " + w.to_hex());
  } else if (strict) {
    throw Error(ErrorCode::InvalidParams, system.kind() + " oracle said yes without a witness");
  }
  // Permissive: fall back to the certificate, else report the decision only.
  if (p.outcome.certificate && system.is_member(*p.outcome.certificate)) result.witness = *p.outcome.certificate;
}

template <class PlanCalls>
SearchResult drive(const ImplicitSetSystem& system, ElementSet base, int k, std::uint64_t seed,
                   const SearchOptions& options, const PlanCalls& plan_calls) {
  const auto start = Clock::now();
  validate_query(system.universe(), {base, k});
  const SystemContract contract = system.contract();
  contract.validate();
  const ElementSet pool = system.universe().all() - base;

  SearchResult result;
  result.k = k;
  result.schedule = build_schedule(pool.size(), k, contract, seed);
  result.calls_per_plan.assign(static_cast<std::size_t>(k) + 1, 0);
  for (const SplitPlan& plan : result.schedule.plans) {
    if (options.stop_at_first_yes && result.yes()) break;
    PlanRun run = plan_calls(plan, pool);
    result.calls_per_plan[static_cast<std::size_t>(plan.target_size)] = run.calls;
    result.oracle_calls += run.calls;
    result.branch_nodes += run.nodes;
    if (run.hit && !result.yes()) accept(system, contract, base, *run.hit, result);
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return result;
}

}  // namespace

SearchResult randomized_search(const ImplicitSetSystem& system, ElementSet base, int k, std::uint64_t seed,
                               const SearchOptions& options) {
  return drive(system, base, k, seed, options, [&](const SplitPlan& plan, ElementSet pool) {
    const int kp = plan.target_size;
    const int t = plan.split;
    return run_plan(checked_count(plan.repetitions), options.threads, options.stop_at_first_yes, [&](std::uint64_t rep) {
      RngStream rng = derive_stream(seed, static_cast<std::uint64_t>(kp), rep);
      const ElementSet y = uniform_t_subset(pool, t, rng);
      return Probe{y, kp - t, system.extend({base | y, kp - t})};
    });
  });
}

SearchResult deterministic_search(const ImplicitSetSystem& system, ElementSet base, int k, FamilySource& families,
                                  const SearchOptions& options) {
  return drive(system, base, k, 0, options, [&](const SplitPlan& plan, ElementSet pool) {
    const int kp = plan.target_size;
    const int t = plan.split;
    const auto fam = families.get(pool.size(), kp, t);
    return run_plan(fam->size(), options.threads, options.stop_at_first_yes, [&](std::uint64_t i) {
      const ElementSet y = pool.deposit(fam->members[i]);
      return Probe{y, kp - t, system.extend({base | y, kp - t})};
    });
  });
}

std::uint64_t budget_seed(std::uint64_t seed, int k) { return mix64(seed ^ mix64(0xb0d6e7ULL + static_cast<std::uint64_t>(k))); }

SearchResult search(const ImplicitSetSystem& system, const DriverMode& mode, int k, FamilySource& families,
                    const SearchOptions& options) {
  if (const auto* r = std::get_if<Randomized>(&mode)) return randomized_search(system, ElementSet{}, k, r->seed, options);
  return deterministic_search(system, ElementSet{}, k, families, options);
}

SearchResult minimize(const ImplicitSetSystem& system, const DriverMode& mode, FamilySource& families,
                      const SearchOptions& options) {
  const auto start = Clock::now();
  const int n = system.n();
  std::uint64_t calls = 0;
  std::uint64_t nodes = 0;
  auto probe = [&](int k) {
    DriverMode m = mode;
    if (auto* r = std::get_if<Randomized>(&m)) r->seed = budget_seed(r->seed, k);
    SearchResult res = search(system, m, k, families, options);
    calls += res.oracle_calls;
    nodes += res.branch_nodes;
    return res;
  };

  std::optional<SearchResult> best;
  if (system.declares_monotone()) {
    SearchResult top = probe(n);
    if (!top.yes()) throw Error(ErrorCode::NoSolution, "no solution even with k = " + std::to_string(n));
    best = std::move(top);
    int lo = 0;
    int hi = n;  // hi always says yes
    while (lo < hi) {
      const int mid = lo + (hi - lo) / 2;
      SearchResult res = probe(mid);
      if (res.yes()) {
        hi = mid;
        best = std::move(res);
      } else {
        lo = mid + 1;
      }
    }
  } else {
    for (int k = 0; k <= n && !best; ++k) {
      SearchResult res = probe(k);
      if (res.yes()) best = std::move(res);
    }
    if (!best) throw Error(ErrorCode::NoSolution, "no solution even with k = " + std::to_string(n));
  }
  best->oracle_calls = calls;
  best->branch_nodes = nodes;
  best->elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return *best;
}

}  // namespace mls
