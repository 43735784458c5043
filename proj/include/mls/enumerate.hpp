#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mls/driver.hpp"
#include "mls/family.hpp"
#include "mls/oracle.hpp"
#include "mls/system.hpp"

namespace mls {

/// The sets S with |S| = k, S disjoint from base, base + S a minimal member.
struct UniformSlice {
  ElementSet base;
  int size = 0;
  std::vector<ElementSet> members;  // sorted by mask, no duplicates
  BranchStats stats;
};

/// Depth-k branching leaves filtered by the system's minimality test.
/// Throws NotUniform when the system has no slice enumerator.
UniformSlice enumerate_slice(const ImplicitSetSystem& system, ElementSet base, int k);

UniformSlice slice_minimal_hitting(const ImplicitSetSystem& hitting_set, ElementSet base, int k);
UniformSlice slice_minimal_models(const ImplicitSetSystem& cnf, ElementSet base, int k);
UniformSlice slice_minimal_fvs(const ImplicitSetSystem& tournament, ElementSet base, int k);

struct EnumerationStats {
  std::uint64_t emitted = 0;
  std::uint64_t duplicates = 0;  // slice members already emitted
  std::uint64_t slices = 0;      // enumerate_slice calls
  std::uint64_t branch_nodes = 0;
};

using SetSink = std::function<void(ElementSet)>;

/// All minimal members of F_I. For every k and its split t, each base X of
/// size t (every member of an (n, k, t)-family, or ceil(1/p) uniform draws)
/// is extended by the slice of size k - t. Each set reaches the sink once.
/// Deterministic mode emits exactly the minimal members.
EnumerationStats enumerate_all(const ImplicitSetSystem& system, const DriverMode& mode, FamilySource& families,
                               const SetSink& sink);

/// enumerate_all collected and sorted size-then-mask.
std::vector<ElementSet> enumerate_all_sorted(const ImplicitSetSystem& system, const DriverMode& mode,
                                             FamilySource& families, EnumerationStats* stats = nullptr);

struct UniformityViolation {
  ElementSet base;
  int k = 0;
  std::uint64_t slice_size = 0;
};

struct UniformityReport {
  bool passed = true;
  double max_ratio = 0;  // max over (X, k) of |slice| / c^k
  std::uint64_t checked = 0;
  std::optional<UniformityViolation> first_violation;
};

/// Checks |slice(X, k)| <= c^k * n^2 for every base X and every k, exactly.
UniformityReport check_uniformity(const ImplicitSetSystem& system, const Rational& c);

struct CountingReport {
  bool passed = true;
  std::uint64_t total = 0;
  Rational bound;  // (2 - 1/c)^n * n^2
  double ratio = 0;
  FamilyCensus census;
};

/// Brute-force census of the minimal members against (2 - 1/c)^n * n^2.
CountingReport check_counting_bound(const ImplicitSetSystem& system, const Rational& c);

/// n^2 slack used by both checks, with n = 0 treated as 1.
Rational polynomial_slack(int n);

}  // namespace mls
