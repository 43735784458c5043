#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "mls/family.hpp"
#include "mls/schedule.hpp"
#include "mls/system.hpp"

namespace mls {

struct SearchOptions {
  int threads = 1;
  // When false every scheduled call is made even after a yes; the first yes
  // is still the one reported. Used to measure full schedules.
  bool stop_at_first_yes = true;
};

struct SearchResult {
  Decision decision = Decision::No;
  std::optional<ElementSet> witness;  // full solution, base included
  int k = 0;
  // Calls a sequential run makes: with stop_at_first_yes, everything up to
  // and including the winning call. Independent of the thread count.
  std::uint64_t oracle_calls = 0;
  std::vector<std::uint64_t> calls_per_plan;  // indexed by k'
  std::uint64_t branch_nodes = 0;             // over the counted calls
  std::chrono::nanoseconds elapsed{0};
  SearchSchedule schedule;

  bool yes() const { return decision == Decision::Yes; }
};

/// For k' = 0..k: ceil(1/p) times, draw Y uniformly from the t-subsets of
/// U \ base and ask extend(base + Y, k' - t). Never says yes wrongly in
/// strict mode; on yes-instances it says yes with probability >= 1 - 1/e.
SearchResult randomized_search(const ImplicitSetSystem& system, ElementSet base, int k, std::uint64_t seed,
                               const SearchOptions& options = {});

/// As randomized_search, but Y ranges over an (n - |base|, k', t)-set-
/// inclusion family, which makes the strict-mode answer exact.
SearchResult deterministic_search(const ImplicitSetSystem& system, ElementSet base, int k, FamilySource& families,
                                  const SearchOptions& options = {});

struct Randomized {
  std::uint64_t seed = 0;
};
struct Deterministic {};
using DriverMode = std::variant<Randomized, Deterministic>;

/// Per-budget seed used by minimize and friends.
std::uint64_t budget_seed(std::uint64_t seed, int k);

/// Smallest k whose search says yes, found by binary search over k when the
/// system declares monotonicity and by a linear scan otherwise. oracle_calls
/// and branch_nodes cover every probe. Throws NoSolution when k = n fails.
SearchResult minimize(const ImplicitSetSystem& system, const DriverMode& mode, FamilySource& families,
                      const SearchOptions& options = {});

/// Dispatches on the mode; budget k above the empty base.
SearchResult search(const ImplicitSetSystem& system, const DriverMode& mode, int k, FamilySource& families,
                    const SearchOptions& options = {});

}  // namespace mls
