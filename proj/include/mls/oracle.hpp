#pragma once

// Brute-force ground truth. No pruning: every subset is tried.

#include <optional>
#include <ostream>
#include <vector>

#include "mls/system.hpp"

namespace mls {

/// Counts of family members by cardinality.
struct FamilyCensus {
  std::vector<std::uint64_t> by_size;  // index k = number of members of size k, k = 0..n
  std::uint64_t total = 0;
};

struct BruteForceReport {
  Decision decision = Decision::No;
  std::optional<ElementSet> best_witness;  // added set, base excluded
  std::optional<FamilyCensus> full_census;
  std::optional<std::vector<ElementSet>> enumerated;
};

inline constexpr int kBruteSearchCap = 24;
inline constexpr int kBruteEnumerateCap = 16;

/// Tries subsets of U \ base of size 0..k in size-then-mask order; the
/// witness is the first hit, hence of minimum size. Throws TooLarge when
/// n - |base| > 24.
BruteForceReport brute_subset_search(const ImplicitSetSystem& system, ElementSet base, int k);

/// All minimal members: in F_I with no proper subset in F_I. Output in
/// size-then-mask order with the census. Throws TooLarge when n > 16.
BruteForceReport brute_enumerate_minimal(const ImplicitSetSystem& system);

/// One lowercase hex mask per line.
void write_golden(std::ostream& out, const std::vector<ElementSet>& sets);

}  // namespace mls
