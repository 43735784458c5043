#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "mls/error.hpp"
#include "mls/family.hpp"
#include "support.hpp"

using namespace mls;
using testing::set_of;

namespace {

// Plain covering check: every p-subset of [n] contains some member.
bool naive_covers(const SetInclusionFamily& fam) {
  bool ok = true;
  for_each_k_subset(fam.n, fam.p, [&](ElementSet s) {
    bool hit = false;
    for (ElementSet m : fam.members)
      if ((m.bits() & ~s.bits()) == 0) {
        hit = true;
        break;
      }
    ok = ok && hit;
    return ok;
  });
  return ok;
}

void check_well_formed(const SetInclusionFamily& fam) {
  std::set<std::uint64_t> seen;
  for (ElementSet m : fam.members) {
    CHECK(m.size() == fam.q);
    CHECK(m.subset_of(ElementSet::full(fam.n)));
    CHECK(seen.insert(m.bits()).second);
  }
}

// A rational just below ln(n).
Rational ln_lower(int n) {
  const double v = std::log(static_cast<double>(n));
  const auto scaled = static_cast<long long>(std::floor(v * 1e12)) - 1;
  return scaled <= 0 ? Rational(0) : Rational(BigInt(scaled), BigInt(1000000000000LL));
}

}  // namespace

TEST_CASE("kappa examples and monotonicity") {
  CHECK(kappa(9, 4, 0) == 1);
  CHECK(kappa(9, 4, 4) == Rational(binomial(9, 4)));
  CHECK(kappa(4, 2, 1) == 2);
  CHECK_THROWS_AS(kappa(3, 4, 1), Error);
  CHECK_THROWS_AS(kappa(5, 2, 3), Error);
  for (int n = 1; n <= 20; ++n)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p; ++q) {
        CHECK(kappa(n, p, q) >= 1);
        CHECK(kappa(n + 1, p, q) >= kappa(n, p, q));
        if (p + 1 <= n) CHECK(kappa(n, p + 1, q) <= kappa(n, p, q));
      }
}

TEST_CASE("greedy examples") {
  auto empty = build_greedy(7, 3, 0);
  CHECK(empty.size() == 1);
  CHECK(empty.members[0] == ElementSet{});
  auto layer = build_greedy(5, 2, 2);
  CHECK(layer.size() == 10);
  auto mid = build_greedy(8, 4, 2);
  CHECK(verify_covering(mid, true).covered);
  CHECK(verify_covering(mid, true).checked == 70);
  CHECK(naive_covers(mid));
  const Rational lnn = ln_lower(8);
  CHECK(Rational(mid.size()) <= kappa(8, 4, 2) * (1 + 4 * lnn) * (1 + ln_lower(70)));
  CHECK_THROWS_AS(build_greedy(21, 3, 1), Error);
}

TEST_CASE("greedy takes the first maximum") {
  // (4,2,1): every element covers three pairs; 0 is chosen first, then 1,
  // and then 2 for the pair {2,3}.
  auto fam = build_greedy(4, 2, 1);
  CHECK(fam.members == std::vector<ElementSet>{set_of({0}), set_of({1}), set_of({2})});
}

TEST_CASE("every family up to n = 16 covers exhaustively") {
  for (int n = 0; n <= 16; ++n)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p; ++q) {
        auto fam = build_greedy(n, p, q);
        check_well_formed(fam);
        auto res = verify_covering(fam, true);
        CHECK_MESSAGE(res.covered, "(" << n << "," << p << "," << q << ")");
      }
}

TEST_CASE("greedy size bound for n <= 14") {
  for (int n = 1; n <= 14; ++n) {
    const Rational lnn = ln_lower(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p; ++q) {
        auto fam = build_greedy(n, p, q);
        const Rational slack = (1 + p * lnn) * (1 + p * lnn);
        CHECK_MESSAGE(Rational(fam.size()) <= kappa(n, p, q) * slack, "(" << n << "," << p << "," << q << ")");
      }
  }
}

TEST_CASE("naive covering oracle agrees with verify_covering") {
  for (int n = 1; n <= 9; ++n)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= p; ++q) CHECK(naive_covers(build_greedy(n, p, q)));
}

TEST_CASE("verify_covering finds a removed member") {
  auto fam = build_greedy(5, 3, 2);
  REQUIRE(verify_covering(fam, true).covered);
  for (std::size_t drop = 0; drop < fam.size(); ++drop) {
    auto broken = fam;
    broken.members.erase(broken.members.begin() + static_cast<std::ptrdiff_t>(drop));
    // Greedy output is irredundant here, so each removal uncovers something.
    auto res = verify_covering(broken, true);
    CHECK_FALSE(res.covered);
    REQUIRE(res.missing);
    CHECK(res.missing->size() == 3);
    for (ElementSet m : broken.members) CHECK_FALSE(m.subset_of(*res.missing));
  }
  auto layer = build_exhaustive(7, 5, 2);
  CHECK(layer.size() == 21);
  CHECK(verify_covering(layer, true).covered);
  CHECK(verify_covering(build_greedy(6, 4, 0), true).covered);
}

TEST_CASE("sampled covering checks draw p-sets") {
  auto fam = build_greedy(18, 6, 2);
  auto res = verify_covering(fam, false, 1, 5000);
  CHECK(res.covered);
  CHECK(res.checked == 5000);
  auto broken = fam;
  broken.members.resize(broken.members.size() / 4);
  CHECK_FALSE(verify_covering(broken, false, 1, 5000).covered);
}

TEST_CASE("validate_family rejects malformed members") {
  SetInclusionFamily bad{5, 3, 2, {set_of({0, 1, 2})}, Construction::Greedy};
  CHECK_THROWS_AS(validate_family(bad), Error);
  SetInclusionFamily outside{5, 3, 1, {set_of({6})}, Construction::Greedy};
  CHECK_THROWS_AS(validate_family(outside), Error);
}

TEST_CASE("pairwise hash family") {
  auto h = pairwise_family(7, 2);
  CHECK(h.prime == 7);
  CHECK(h.size() == 42);
  for (std::size_t f = 0; f < h.size(); ++f)
    for (int u = 0; u < 7; ++u) {
      const int v = h.apply(f, u);
      CHECK(v >= 0);
      CHECK(v < 2);
    }
  CHECK(pairwise_family(10, 3).prime == 11);
  CHECK_THROWS_AS(pairwise_family(1, 2), Error);
  CHECK_THROWS_AS(pairwise_family(5, 1), Error);
  CHECK(smallest_prime_at_least(24) == 29);
  CHECK(bucket_count(24) == 5);
  CHECK(bucket_count(16) == 4);
  CHECK(bucket_count(2) == 1);
}

TEST_CASE("some function is good for a planted set") {
  auto h = pairwise_family(16, 4);
  const ElementSet planted = set_of({0, 3, 5, 6, 9, 10, 12, 15});
  int good = 0;
  for (std::size_t f = 0; f < h.size(); ++f) {
    auto parts = h.partition(f);
    ElementSet all;
    for (ElementSet part : parts) {
      CHECK(part.disjoint(all));
      all |= part;
    }
    CHECK(all == ElementSet::full(16));
    if (is_good_for(parts, 16, planted)) ++good;
  }
  CHECK(good >= 1);
  // Tiny universes make every partition good: slack sqrt(4) * 4 = 8.
  CHECK(is_good_partition({ElementSet::full(4), {}, {}, {}}, 4));
  // At n = 64 with 6 buckets the slack is 48 < 64 - 64/6.
  std::vector<ElementSet> lopsided(6);
  lopsided[0] = ElementSet::full(64);
  CHECK_FALSE(is_good_partition(lopsided, 64));
}

TEST_CASE("bucketed construction") {
  auto small = build_bucketed(12, 5, 2);
  CHECK(small.construction == Construction::Greedy);
  CHECK(small.members == build_greedy(12, 5, 2).members);

  for (auto [n, p, q] : std::vector<std::tuple<int, int, int>>{{12, 5, 2}, {14, 6, 3}, {16, 4, 2}, {13, 7, 1}}) {
    auto fam = build_bucketed(n, p, q, {false});
    CHECK(fam.construction == Construction::Bucketed);
    check_well_formed(fam);
    CHECK_MESSAGE(verify_covering(fam, true).covered, "(" << n << "," << p << "," << q << ")");
  }

  auto big = build_bucketed(24, 6, 3);
  CHECK(big.construction == Construction::Bucketed);
  check_well_formed(big);
  auto res = verify_covering(big, false);
  CHECK(res.covered);
  CHECK(res.checked == kDefaultCoverageSamples);
  CHECK(Rational(big.size()) <= kappa(24, 6, 3) * pow(Rational(2), 12));

  auto zero = build_bucketed(24, 6, 0);
  CHECK(zero.size() == 1);
}

TEST_CASE("family files round trip") {
  auto fam = build_greedy(9, 4, 2);
  std::stringstream ss;
  write_family(ss, fam);
  std::string header;
  std::getline(std::istringstream(ss.str()), header);
  CHECK(header == "sepfam v1 9 4 2 " + std::to_string(fam.size()));
  auto back = read_family(ss, Construction::Greedy);
  CHECK(back.members == fam.members);
  std::istringstream bad("sepfam v2 1 1 1 1\n1\n");
  CHECK_THROWS_AS(read_family(bad, Construction::Greedy), Error);
  std::istringstream short_file("sepfam v1 4 2 1 3\n1\n2\n");
  CHECK_THROWS_AS(read_family(short_file, Construction::Greedy), Error);
}

TEST_CASE("family source memoizes and caches on disk") {
  const auto dir = std::filesystem::temp_directory_path() / ("mls-family-test-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  {
    FamilySource src(dir);
    auto a = src.get(10, 4, 2);
    auto b = src.get(10, 4, 2);
    CHECK(a.get() == b.get());
    CHECK(src.constructed() == 1);
    CHECK(src.loaded_from_disk() == 0);
  }
  {
    FamilySource src(dir);
    auto a = src.get(10, 4, 2);
    CHECK(src.constructed() == 0);
    CHECK(src.loaded_from_disk() == 1);
    CHECK(a->members == build_greedy(10, 4, 2).members);
  }
  std::filesystem::remove_all(dir);
  FamilySource memory(std::nullopt);
  CHECK(memory.get(6, 3, 1)->size() == build_greedy(6, 3, 1).size());
}
