#include "mls/family.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mls/error.hpp"
#include "mls/sampling.hpp"

namespace mls {

namespace {

void check_params(int n, int p, int q) {
  if (q < 0 || q > p || p > n || n > kMaxUniverse)
    throw Error(ErrorCode::InvalidParams, "need 0 <= q <= p <= n <= 64, got (" + std::to_string(n) + "," +
                                              std::to_string(p) + "," + std::to_string(q) + ")");
}

// Small binomials for ranking subsets of at most 20 elements.
class BinomTable {
 public:
  explicit BinomTable(int n) : n_(n), table_(static_cast<std::size_t>((n + 1) * (n + 2)), 0) {
    for (int i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (int j = 1; j <= i; ++j) at(i, j) = at(i - 1, j - 1) + (j <= i - 1 ? at(i - 1, j) : 0);
    }
  }
  std::uint64_t operator()(int i, int j) const {
    if (j < 0 || j > i) return 0;
    return table_[static_cast<std::size_t>(i * (n_ + 2) + j)];
  }

 private:
  std::uint64_t& at(int i, int j) { return table_[static_cast<std::size_t>(i * (n_ + 2) + j)]; }
  int n_;
  std::vector<std::uint64_t> table_;
};

// Colex rank among subsets of equal size; matches the increasing-mask order.
std::uint64_t colex_rank(ElementSet s, const BinomTable& binom) {
  std::uint64_t r = 0;
  int i = 1;
  s.for_each([&](int e) { r += binom(e, i++); });
  return r;
}

SetInclusionFamily single_empty(int n, int p, Construction c) { return {n, p, 0, {ElementSet{}}, c}; }

}  // namespace

std::string to_string(Construction c) {
  switch (c) {
    case Construction::Greedy: return "greedy";
    case Construction::Bucketed: return "bucketed";
    case Construction::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

Construction parse_construction(const std::string& text) {
  if (text == "greedy") return Construction::Greedy;
  if (text == "bucketed") return Construction::Bucketed;
  if (text == "exhaustive") return Construction::Exhaustive;
  throw Error(ErrorCode::InvalidParams, "unknown construction '" + text + "'");
}

Rational kappa(int n, int p, int q) {
  check_params(n, p, q);
  return Rational(binomial(n, q), binomial(p, q));
}

SetInclusionFamily build_exhaustive(int n, int p, int q) {
  check_params(n, p, q);
  SetInclusionFamily fam{n, p, q, {}, Construction::Exhaustive};
  for_each_k_subset(n, q, [&](ElementSet s) {
    fam.members.push_back(s);
    return true;
  });
  return fam;
}

SetInclusionFamily build_greedy(int n, int p, int q) {
  check_params(n, p, q);
  if (n > kGreedyCap) throw Error(ErrorCode::TooLarge, "greedy construction is capped at n = 20, got " + std::to_string(n));
  if (q == 0) return single_empty(n, p, Construction::Greedy);
  if (q == p) {
    auto fam = build_exhaustive(n, p, q);
    fam.construction = Construction::Greedy;
    return fam;
  }

  const BinomTable binom(n);
  const ElementSet all = ElementSet::full(n);
  std::vector<char> covered(binom(n, p), 0);
  std::uint64_t uncovered = binom(n, p);
  // count[rank(B)]: uncovered p-sets containing the q-set B, kept exact.
  std::vector<std::uint32_t> count(binom(n, q), static_cast<std::uint32_t>(binom(n - q, p - q)));

  // Marks A covered and takes it out of the count of each q-subset.
  auto cover = [&](ElementSet a) {
    char& c = covered[colex_rank(a, binom)];
    if (c) return;
    c = 1;
    --uncovered;
    int elems[64];
    int m = 0;
    a.for_each([&](int e) { elems[m++] = e; });
    for_each_k_subset(p, q, [&](ElementSet pos) {
      std::uint64_t r = 0;
      int i = 1;
      pos.for_each([&](int j) { r += binom(elems[j], i++); });
      --count[r];
      return true;
    });
  };

  struct Entry {
    std::uint32_t count;
    std::uint64_t mask;
  };
  // Heap order: larger count first, then smaller mask.
  auto worse = [](const Entry& a, const Entry& b) { return a.count != b.count ? a.count < b.count : a.mask > b.mask; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for_each_k_subset(n, q, [&](ElementSet b) {
    heap.push({count[colex_rank(b, binom)], b.bits()});
    return true;
  });

  SetInclusionFamily fam{n, p, q, {}, Construction::Greedy};
  // Counts only decrease, so stale heap entries overestimate; an entry whose
  // stored count is still current is the greedy choice, ties included.
  while (uncovered > 0) {
    const Entry top = heap.top();
    heap.pop();
    const ElementSet b(top.mask);
    const std::uint32_t now = count[colex_rank(b, binom)];
    if (now == 0) continue;
    if (now != top.count) {
      heap.push({now, top.mask});
      continue;
    }
    fam.members.push_back(b);
    const ElementSet rest = all - b;
    for_each_k_subset(n - q, p - q, [&](ElementSet pos) {
      cover(b | rest.deposit(pos));
      return true;
    });
  }
  return fam;
}

int bucket_count(int n) {
  int b = 0;
  while ((std::int64_t{1} << b) < n) ++b;
  return b;
}

int smallest_prime_at_least(int n) {
  auto is_prime = [](int x) {
    if (x < 2) return false;
    for (int d = 2; d * d <= x; ++d)
      if (x % d == 0) return false;
    return true;
  };
  int x = std::max(n, 2);
  while (!is_prime(x)) ++x;
  return x;
}

int BucketHashFamily::apply(std::size_t f, int u) const {
  const auto [a, shift] = functions[f];
  return static_cast<int>(((static_cast<std::int64_t>(a) * u + shift) % prime) % buckets);
}

std::vector<ElementSet> BucketHashFamily::partition(std::size_t f) const {
  std::vector<ElementSet> parts(static_cast<std::size_t>(buckets));
  for (int u = 0; u < n; ++u) parts[static_cast<std::size_t>(apply(f, u))].insert(u);
  return parts;
}

BucketHashFamily pairwise_family(int n, int b) {
  if (n < 2 || b < 2) throw Error(ErrorCode::InvalidParams, "pairwise family needs n >= 2 and b >= 2");
  BucketHashFamily h;
  h.n = n;
  h.buckets = b;
  h.prime = smallest_prime_at_least(n);
  h.functions.reserve(static_cast<std::size_t>(h.prime) * static_cast<std::size_t>(h.prime - 1));
  for (int a = 1; a < h.prime; ++a)
    for (int shift = 0; shift < h.prime; ++shift) h.functions.emplace_back(a, shift);
  return h;
}

namespace {

// |count - total / b| <= sqrt(n) * b, squared and scaled by b to stay integral.
bool within_slack(std::int64_t count, std::int64_t total, std::int64_t n, std::int64_t b) {
  std::int64_t dev = b * count - total;
  return dev * dev <= b * b * b * b * n;
}

}  // namespace

bool is_good_partition(const std::vector<ElementSet>& buckets, int n) {
  const auto b = static_cast<std::int64_t>(buckets.size());
  return std::all_of(buckets.begin(), buckets.end(), [&](ElementSet part) { return within_slack(part.size(), n, n, b); });
}

bool is_good_for(const std::vector<ElementSet>& buckets, int n, ElementSet s) {
  const auto b = static_cast<std::int64_t>(buckets.size());
  if (!is_good_partition(buckets, n)) return false;
  return std::all_of(buckets.begin(), buckets.end(),
                     [&](ElementSet part) { return within_slack((part & s).size(), s.size(), n, b); });
}

SetInclusionFamily build_bucketed(int n, int p, int q, BucketedOptions options) {
  check_params(n, p, q);
  const int b = bucket_count(n);
  if ((options.allow_fallback && n <= kGreedyCap) || b < 2) return build_greedy(n, p, q);
  if (q == 0) return single_empty(n, p, Construction::Bucketed);

  const BucketHashFamily hash = pairwise_family(n, b);
  SetInclusionFamily fam{n, p, q, {}, Construction::Bucketed};

  std::map<std::tuple<int, int, int>, SetInclusionFamily> sub;
  auto sub_family = [&](int size, int s, int qs) -> const SetInclusionFamily& {
    auto key = std::make_tuple(size, s, qs);
    auto it = sub.find(key);
    if (it == sub.end()) it = sub.emplace(key, build_greedy(size, s, qs)).first;
    return it->second;
  };

  std::set<std::vector<std::uint64_t>> seen_partitions;
  std::unordered_set<std::uint64_t> seen_unions;
  std::unordered_set<std::uint64_t> emitted;
  // Once every q-subset is out, further tuples cannot add anything.
  const auto layer = static_cast<std::size_t>(binomial(n, q));
  auto saturated = [&] { return emitted.size() == layer; };

  for (std::size_t f = 0; f < hash.size() && !saturated(); ++f) {
    const std::vector<ElementSet> parts = hash.partition(f);
    if (!is_good_partition(parts, n)) continue;
    // Per-bucket families are built greedily, so every bucket must fit the cap.
    if (std::any_of(parts.begin(), parts.end(), [](ElementSet s) { return s.size() > kGreedyCap; })) continue;
    // Functions inducing the same partition generate the same sets.
    std::vector<std::uint64_t> canon;
    for (ElementSet s : parts) canon.push_back(s.bits());
    std::sort(canon.begin(), canon.end());
    if (!seen_partitions.insert(canon).second) continue;

    // Admissible piece sizes per bucket, and the largest total the remaining
    // buckets can still absorb.
    std::vector<std::vector<int>> sizes(static_cast<std::size_t>(b));
    std::vector<int> tail_max(static_cast<std::size_t>(b) + 1, 0);
    for (int i = 0; i < b; ++i)
      for (int s = 0; s <= parts[static_cast<std::size_t>(i)].size(); ++s)
        if (within_slack(s, p, n, b)) sizes[static_cast<std::size_t>(i)].push_back(s);
    for (int i = b - 1; i >= 0; --i)
      tail_max[static_cast<std::size_t>(i)] =
          tail_max[static_cast<std::size_t>(i) + 1] +
          (sizes[static_cast<std::size_t>(i)].empty() ? 0 : sizes[static_cast<std::size_t>(i)].back());

    auto emit_union = [&](ElementSet w) {
      if (!seen_unions.insert(w.bits()).second) return;
      // D ranges over the (|W| - q)-subsets of W, so W \ D is every q-subset.
      for_each_k_subset(w.size(), q, [&](ElementSet pos) {
        ElementSet y = w.deposit(pos);
        if (emitted.insert(y.bits()).second) fam.members.push_back(y);
        return true;
      });
    };

    auto recurse = [&](auto&& self, int i, int remaining, ElementSet w) -> void {
      if (saturated()) return;
      if (i == b) {
        if (remaining == 0) emit_union(w);
        return;
      }
      if (tail_max[static_cast<std::size_t>(i)] < remaining) return;
      const ElementSet bucket = parts[static_cast<std::size_t>(i)];
      for (int s : sizes[static_cast<std::size_t>(i)]) {
        if (s > remaining) break;
        const int qs = (q * s + p - 1) / p;  // ceil(q/p * s)
        for (ElementSet y : sub_family(bucket.size(), s, qs).members) self(self, i + 1, remaining - s, w | bucket.deposit(y));
      }
    };
    recurse(recurse, 0, p, ElementSet{});
  }
  std::sort(fam.members.begin(), fam.members.end());
  return fam;
}

void validate_family(const SetInclusionFamily& fam) {
  check_params(fam.n, fam.p, fam.q);
  const ElementSet all = ElementSet::full(fam.n);
  for (ElementSet m : fam.members)
    if (m.size() != fam.q || !m.subset_of(all))
      throw Error(ErrorCode::InvalidParams, "family member " + m.to_hex() + " is not a " + std::to_string(fam.q) + "-subset of [n]");
}

CoverageResult verify_covering(const SetInclusionFamily& fam, bool exhaustive, std::uint64_t seed, std::uint64_t samples) {
  validate_family(fam);
  CoverageResult result;
  // Either look every q-subset of S up in a hash set, or scan the members,
  // whichever touches fewer sets.
  const bool by_lookup = binomial(fam.p, fam.q) <= BigInt(fam.members.size());
  std::unordered_set<std::uint64_t> lookup;
  if (by_lookup)
    for (ElementSet m : fam.members) lookup.insert(m.bits());

  auto covered = [&](ElementSet s) {
    if (by_lookup)
      return !for_each_k_subset(fam.p, fam.q, [&](ElementSet pos) { return lookup.count(s.deposit(pos).bits()) == 0; });
    return std::any_of(fam.members.begin(), fam.members.end(), [&](ElementSet m) { return m.subset_of(s); });
  };
  auto check = [&](ElementSet s) {
    ++result.checked;
    if (covered(s)) return true;
    result.covered = false;
    result.missing = s;
    return false;
  };

  if (exhaustive) {
    for_each_k_subset(fam.n, fam.p, check);
  } else {
    RngStream rng = derive_stream(seed, static_cast<std::uint64_t>(fam.p), static_cast<std::uint64_t>(fam.n));
    const ElementSet all = ElementSet::full(fam.n);
    for (std::uint64_t i = 0; i < samples; ++i)
      if (!check(uniform_t_subset(all, fam.p, rng))) break;
  }
  return result;
}

void write_family(std::ostream& out, const SetInclusionFamily& fam) {
  out << "sepfam v1 " << fam.n << ' ' << fam.p << ' ' << fam.q << ' ' << fam.members.size() << '\n';
  for (ElementSet m : fam.members) out << m.to_hex() << '\n';
}

SetInclusionFamily read_family(std::istream& in, Construction construction) {
  std::string magic, version;
  SetInclusionFamily fam;
  std::size_t count = 0;
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::ParseError, "empty family file");
  std::istringstream hs(header);
  if (!(hs >> magic >> version >> fam.n >> fam.p >> fam.q >> count) || magic != "sepfam" || version != "v1")
    throw Error(ErrorCode::ParseError, "bad family header '" + header + "'");
  fam.construction = construction;
  std::string line;
  while (fam.members.size() < count && std::getline(in, line)) {
    if (line.empty()) continue;
    fam.members.push_back(ElementSet::from_hex(line));
  }
  if (fam.members.size() != count)
    throw Error(ErrorCode::ParseError, "family file declares " + std::to_string(count) + " members, found " +
                                           std::to_string(fam.members.size()));
  validate_family(fam);
  return fam;
}

FamilySource::FamilySource() {
  if (const char* dir = std::getenv("MLS_CACHE_DIR"); dir != nullptr && *dir != '\0') cache_dir_ = dir;
}

FamilySource::FamilySource(std::optional<std::filesystem::path> cache_dir) : cache_dir_(std::move(cache_dir)) {}

std::shared_ptr<const SetInclusionFamily> FamilySource::get(int n, int p, int q) {
  std::lock_guard lock(mutex_);
  auto key = std::make_tuple(n, p, q);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const Construction expected = (n <= kGreedyCap || bucket_count(n) < 2) ? Construction::Greedy : Construction::Bucketed;
  std::optional<std::filesystem::path> file;
  if (cache_dir_) {
    file = *cache_dir_ / ("sepfam-" + to_string(expected) + "-" + std::to_string(n) + "-" + std::to_string(p) + "-" +
                          std::to_string(q) + ".txt");
  }
  std::shared_ptr<const SetInclusionFamily> fam;
  if (file && std::filesystem::exists(*file)) {
    std::ifstream in(*file);
    auto loaded = read_family(in, expected);
    if (loaded.n != n || loaded.p != p || loaded.q != q)
      throw Error(ErrorCode::ParseError, "cached family " + file->string() + " has mismatched parameters");
    fam = std::make_shared<const SetInclusionFamily>(std::move(loaded));
    ++loaded_;
  } else {
    fam = std::make_shared<const SetInclusionFamily>(build_bucketed(n, p, q));
    ++constructed_;
    if (file) {
      std::filesystem::create_directories(*cache_dir_);
      std::filesystem::path tmp = *file;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        write_family(out, *fam);
      }
      std::filesystem::rename(tmp, *file);
    }
  }
  memo_.emplace(key, fam);
  return fam;
}

std::size_t FamilySource::constructed() const {
  std::lock_guard lock(mutex_);
  return constructed_;
}

std::size_t FamilySource::loaded_from_disk() const {
  std::lock_guard lock(mutex_);
  return loaded_;
}

}  // namespace mls
