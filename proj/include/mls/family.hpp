#pragma once

// (n, p, q)-set-inclusion families: collections of q-subsets of [n] such
// that every p-subset of [n] contains at least one of them.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mls/element_set.hpp"
#include "mls/rational.hpp"

namespace mls {

enum class Construction { Greedy, Bucketed, Exhaustive };

std::string to_string(Construction c);
Construction parse_construction(const std::string& text);

struct SetInclusionFamily {
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<ElementSet> members;
  Construction construction = Construction::Greedy;

  std::size_t size() const { return members.size(); }
};

/// C(n, q) / C(p, q). Throws InvalidParams unless 0 <= q <= p <= n.
Rational kappa(int n, int p, int q);

inline constexpr int kGreedyCap = 20;

/// Greedy set cover over the p-subsets: repeatedly take the q-set contained
/// in the most uncovered p-sets, ties to the smallest mask. Throws TooLarge
/// when n > 20.
SetInclusionFamily build_greedy(int n, int p, int q);

/// Every q-subset of [n].
SetInclusionFamily build_exhaustive(int n, int p, int q);

struct BucketedOptions {
  // When false the bucketed construction also runs for n <= 20.
  bool allow_fallback = true;
};

/// Bucketed construction: pairwise-independent bucket hashing, small greedy
/// families per bucket, recombined and trimmed to exactly q elements.
/// Falls back to build_greedy when n <= 20 (unless disabled) or when fewer
/// than two buckets would be used.
SetInclusionFamily build_bucketed(int n, int p, int q, BucketedOptions options = {});

/// Throws InvalidParams unless every member has exactly q elements inside [0, n).
void validate_family(const SetInclusionFamily& fam);

struct CoverageResult {
  bool covered = true;
  std::optional<ElementSet> missing;  // first p-set with no member inside it
  std::uint64_t checked = 0;
};

inline constexpr std::uint64_t kDefaultCoverageSamples = 100000;

/// Exhaustive mode walks all C(n, p) sets in increasing mask order; sampled
/// mode draws `samples` uniform p-sets from a stream seeded with `seed`.
CoverageResult verify_covering(const SetInclusionFamily& fam, bool exhaustive, std::uint64_t seed = 0x5eedf00dULL,
                               std::uint64_t samples = kDefaultCoverageSamples);

/// Affine maps u -> ((a*u + shift) mod prime) mod b over the smallest prime
/// >= n, for every a in [1, prime) and shift in [0, prime).
struct BucketHashFamily {
  int n = 0;
  int prime = 0;
  int buckets = 0;
  std::vector<std::pair<int, int>> functions;  // (a, shift)

  std::size_t size() const { return functions.size(); }
  int apply(std::size_t f, int u) const;
  /// Bucket i holds the elements u with apply(f, u) == i.
  std::vector<ElementSet> partition(std::size_t f) const;
};

/// Throws InvalidParams unless n >= 2 and b >= 2.
BucketHashFamily pairwise_family(int n, int b);

/// Every bucket size within sqrt(n) * b of n / b.
bool is_good_partition(const std::vector<ElementSet>& buckets, int n);
/// Additionally every |bucket ∩ s| within sqrt(n) * b of |s| / b.
bool is_good_for(const std::vector<ElementSet>& buckets, int n, ElementSet s);

int bucket_count(int n);
int smallest_prime_at_least(int n);

/// Cache format: "sepfam v1 <n> <p> <q> <count>" then one hex mask per line.
void write_family(std::ostream& out, const SetInclusionFamily& fam);
SetInclusionFamily read_family(std::istream& in, Construction construction);

/// Memoizing family provider for the deterministic drivers. Families are
/// built with build_bucketed (greedy below the crossover) and, when a cache
/// directory is configured, persisted there. Safe to share across threads.
class FamilySource {
 public:
  /// Defaults the cache directory to $MLS_CACHE_DIR when set.
  FamilySource();
  explicit FamilySource(std::optional<std::filesystem::path> cache_dir);

  std::shared_ptr<const SetInclusionFamily> get(int n, int p, int q);

  std::size_t constructed() const;
  std::size_t loaded_from_disk() const;

 private:
  std::optional<std::filesystem::path> cache_dir_;
  mutable std::mutex mutex_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const SetInclusionFamily>> memo_;
  std::size_t constructed_ = 0;
  std::size_t loaded_ = 0;
};

}  // namespace mls
