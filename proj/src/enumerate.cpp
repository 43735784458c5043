#include "mls/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "mls/error.hpp"
#include "mls/sampling.hpp"
#include "mls/schedule.hpp"

namespace mls {

UniformSlice enumerate_slice(const ImplicitSetSystem& system, ElementSet base, int k) {
  validate_query(system.universe(), {base, k});
  if (!system.has_slice_enumerator()) throw Error(ErrorCode::NotUniform, system.kind() + " has no slice enumerator");
  SliceCandidates cand = system.slice_candidates(base, k);
  UniformSlice slice{base, k, {}, cand.stats};
  for (ElementSet s : cand.sets)
    if (s.size() == k && s.disjoint(base) && system.is_minimal_member(base | s)) slice.members.push_back(s);
  std::sort(slice.members.begin(), slice.members.end());
  slice.members.erase(std::unique(slice.members.begin(), slice.members.end()), slice.members.end());
  return slice;
}

UniformSlice slice_minimal_hitting(const ImplicitSetSystem& hitting_set, ElementSet base, int k) {
  return enumerate_slice(hitting_set, base, k);
}
UniformSlice slice_minimal_models(const ImplicitSetSystem& cnf, ElementSet base, int k) {
  return enumerate_slice(cnf, base, k);
}
UniformSlice slice_minimal_fvs(const ImplicitSetSystem& tournament, ElementSet base, int k) {
  return enumerate_slice(tournament, base, k);
}

EnumerationStats enumerate_all(const ImplicitSetSystem& system, const DriverMode& mode, FamilySource& families,
                               const SetSink& sink) {
  if (!system.has_slice_enumerator()) throw Error(ErrorCode::NotUniform, system.kind() + " has no slice enumerator");
  const SystemContract contract = system.contract();
  contract.validate();
  const Rational c = contract.uniformity_constant.value_or(contract.extension_base);
  const int n = system.n();
  const ElementSet all = system.universe().all();

  EnumerationStats stats;
  std::unordered_set<ElementSet> seen;
  auto extend_base = [&](ElementSet x, int rest) {
    UniformSlice slice = enumerate_slice(system, x, rest);
    ++stats.slices;
    stats.branch_nodes += slice.stats.nodes;
    for (ElementSet s : slice.members) {
      if (seen.insert(x | s).second) {
        ++stats.emitted;
        sink(x | s);
      } else {
        ++stats.duplicates;
      }
    }
  };

  for (int k = 0; k <= n; ++k) {
    const SplitPlan plan = make_plan(n, k, c);
    const int t = plan.split;
    if (const auto* r = std::get_if<Randomized>(&mode)) {
      if (plan.repetitions > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw Error(ErrorCode::TooLarge, "repetition count does not fit in 64 bits");
      const auto reps = plan.repetitions.convert_to<std::uint64_t>();
      for (std::uint64_t rep = 0; rep < reps; ++rep) {
        RngStream rng = derive_stream(r->seed, static_cast<std::uint64_t>(k), rep);
        extend_base(uniform_t_subset(all, t, rng), k - t);
      }
    } else {
      const auto fam = families.get(n, k, t);
      for (ElementSet y : fam->members) extend_base(y, k - t);
    }
  }
  return stats;
}

std::vector<ElementSet> enumerate_all_sorted(const ImplicitSetSystem& system, const DriverMode& mode,
                                             FamilySource& families, EnumerationStats* stats) {
  std::vector<ElementSet> out;
  EnumerationStats s = enumerate_all(system, mode, families, [&](ElementSet z) { out.push_back(z); });
  std::sort(out.begin(), out.end(), size_then_value);
  if (stats) *stats = s;
  return out;
}

Rational polynomial_slack(int n) {
  const int m = std::max(n, 1);
  return Rational(m) * m;
}

UniformityReport check_uniformity(const ImplicitSetSystem& system, const Rational& c) {
  const int n = system.n();
  const Rational slack = polynomial_slack(n);
  UniformityReport report;
  std::vector<Rational> powers{Rational(1)};
  for (int k = 1; k <= n; ++k) powers.push_back(powers.back() * c);

  for (int size = 0; size <= n; ++size) {
    for_each_k_subset(n, size, [&](ElementSet x) {
      for (int k = 0; k <= n - size; ++k) {
        const auto count = static_cast<std::uint64_t>(enumerate_slice(system, x, k).members.size());
        ++report.checked;
        const Rational scaled = Rational(count) / powers[static_cast<std::size_t>(k)];
        report.max_ratio = std::max(report.max_ratio, to_double(scaled));
        if (scaled > slack) {
          report.passed = false;
          if (!report.first_violation) report.first_violation = UniformityViolation{x, k, count};
        }
      }
      return true;
    });
  }
  return report;
}

CountingReport check_counting_bound(const ImplicitSetSystem& system, const Rational& c) {
  const int n = system.n();
  BruteForceReport brute = brute_enumerate_minimal(system);
  CountingReport report;
  report.census = *brute.full_census;
  report.total = report.census.total;
  report.bound = pow(Rational(2) - Rational(1) / c, n) * polynomial_slack(n);
  report.passed = Rational(report.total) <= report.bound;
  report.ratio = to_double(Rational(report.total) / report.bound);
  return report;
}

}  // namespace mls
