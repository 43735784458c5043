#include "mls/oracle.hpp"

#include "mls/error.hpp"

namespace mls {

BruteForceReport brute_subset_search(const ImplicitSetSystem& system, ElementSet base, int k) {
  validate_query(system.universe(), {base, k});
  const ElementSet pool = system.universe().all() - base;
  const int free = pool.size();
  if (free > kBruteSearchCap)
    throw Error(ErrorCode::TooLarge, "brute-force search over " + std::to_string(free) + " free elements");
  BruteForceReport report;
  for (int size = 0; size <= k && !report.best_witness; ++size) {
    for_each_k_subset(free, size, [&](ElementSet positions) {
      ElementSet s = pool.deposit(positions);
      if (system.is_member(base | s)) {
        report.best_witness = s;
        return false;
      }
      return true;
    });
  }
  if (report.best_witness) report.decision = Decision::Yes;
  return report;
}

BruteForceReport brute_enumerate_minimal(const ImplicitSetSystem& system) {
  const int n = system.n();
  if (n > kBruteEnumerateCap) throw Error(ErrorCode::TooLarge, "brute-force enumeration over " + std::to_string(n) + " elements");
  const std::size_t count = std::size_t{1} << n;
  std::vector<char> member(count), has_member_below(count);
  for (std::size_t m = 0; m < count; ++m) member[m] = system.is_member(ElementSet(m)) ? 1 : 0;
  // has_member_below[m]: some subset of m (m included) is a member.
  for (std::size_t m = 0; m < count; ++m) {
    char any = member[m];
    for (int e = 0; e < n && !any; ++e)
      if ((m >> e) & 1U) any = has_member_below[m & ~(std::size_t{1} << e)];
    has_member_below[m] = any;
  }
  BruteForceReport report;
  FamilyCensus census;
  census.by_size.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<ElementSet> minimal;
  for (int size = 0; size <= n; ++size) {
    for_each_k_subset(n, size, [&](ElementSet s) {
      const std::size_t m = s.bits();
      if (!member[m]) return true;
      bool proper_below = false;
      for (int e = 0; e < n && !proper_below; ++e)
        if ((m >> e) & 1U) proper_below = has_member_below[m & ~(std::size_t{1} << e)];
      if (!proper_below) {
        minimal.push_back(s);
        ++census.by_size[static_cast<std::size_t>(size)];
        ++census.total;
      }
      return true;
    });
  }
  report.decision = minimal.empty() ? Decision::No : Decision::Yes;
  if (!minimal.empty()) report.best_witness = minimal.front();
  report.full_census = census;
  report.enumerated = std::move(minimal);
  return report;
}

void write_golden(std::ostream& out, const std::vector<ElementSet>& sets) {
  for (ElementSet s : sets) out << s.to_hex() << '\n';
}

}  // namespace mls
