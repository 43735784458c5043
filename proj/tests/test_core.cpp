#include <doctest.h>

#include <random>
#include <set>

#include "mls/element_set.hpp"
#include "mls/error.hpp"
#include "mls/rational.hpp"
#include "mls/system.hpp"
#include "support.hpp"

using namespace mls;
using testing::set_of;

TEST_CASE("element set algebra matches std::set") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const std::uint64_t mask = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    ElementSet a(rng() & mask), b(rng() & mask);
    std::set<int> sa, sb;
    for (int e = 0; e < n; ++e) {
      if (a.contains(e)) sa.insert(e);
      if (b.contains(e)) sb.insert(e);
    }
    std::set<int> u = sa, d, i;
    u.insert(sb.begin(), sb.end());
    for (int e : sa) (sb.count(e) ? i : d).insert(e);
    CHECK((a | b).size() == static_cast<int>(u.size()));
    CHECK((a & b).size() == static_cast<int>(i.size()));
    CHECK((a - b).size() == static_cast<int>(d.size()));
    CHECK(a.subset_of(b) == std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
    CHECK(a.disjoint(b) == i.empty());
    CHECK(std::vector<int>(sa.begin(), sa.end()) == a.elements());
    CHECK(ElementSet::from_hex(a.to_hex()) == a);
    CHECK((a | b).subset_of(ElementSet::full(n)));
  }
}

TEST_CASE("hex masks are lowercase without prefix") {
  CHECK(set_of({0, 2}).to_hex() == "5");
  CHECK(ElementSet{}.to_hex() == "0");
  CHECK(ElementSet::singleton(63).to_hex() == "8000000000000000");
  CHECK(ElementSet::from_hex("ff") == ElementSet::full(8));
  CHECK_THROWS_AS(ElementSet::from_hex("xyz"), Error);
}

TEST_CASE("deposit lifts positions onto a pool") {
  const ElementSet pool = set_of({1, 4, 6, 9});
  CHECK(pool.deposit(set_of({0})) == set_of({1}));
  CHECK(pool.deposit(set_of({1, 3})) == set_of({4, 9}));
  CHECK(pool.deposit(ElementSet::full(4)) == pool);
}

TEST_CASE("k-subset walk visits each subset once in increasing order") {
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::uint64_t count = 0, last = 0;
      bool ordered = true, sized = true;
      for_each_k_subset(n, k, [&](ElementSet s) {
        if (count > 0 && s.bits() <= last) ordered = false;
        if (s.size() != k || !s.subset_of(ElementSet::full(n))) sized = false;
        last = s.bits();
        ++count;
        return true;
      });
      CHECK(count == testing::naive_binomial(n, k));
      CHECK(ordered);
      CHECK(sized);
    }
  }
  std::uint64_t top = 0;
  for_each_k_subset(64, 63, [&](ElementSet) {
    ++top;
    return true;
  });
  CHECK(top == 64);
  int seen = 0;
  CHECK_FALSE(for_each_k_subset(6, 2, [&](ElementSet) { return ++seen < 3; }));
  CHECK(seen == 3);
}

TEST_CASE("universe info caps the size at 64") {
  CHECK_THROWS_AS(UniverseInfo(65), Error);
  CHECK_THROWS_AS(UniverseInfo(-1), Error);
  UniverseInfo u(5);
  CHECK(u.all() == ElementSet::full(5));
  CHECK(u.within(set_of({0, 4})));
  CHECK_FALSE(u.within(set_of({5})));
  CHECK(u.name(0) == "1");
  u.element_names = {"a", "b", "c", "d", "e"};
  CHECK(u.name(2) == "c");
}

TEST_CASE("rational helpers are exact") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(64, 32) == BigInt("1832624140942590534"));
  CHECK(binomial(3, 5) == 0);
  CHECK(parse_rational("2562/1000") == Rational(1281, 500));
  CHECK(parse_rational("2.562") == Rational(1281, 500));
  CHECK(parse_rational("3") == 3);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK(to_fixed(Rational(5, 3), 4) == "1.6667");
  CHECK(to_fixed(Rational(15, 8), 4) == "1.8750");
  CHECK(to_fixed(Rational(2) - Rational(1) / parse_rational("2.562"), 4) == "1.6097");
  CHECK(ceil(Rational(7, 2)) == 4);
  CHECK(ceil(Rational(4)) == 4);
  CHECK(pow(Rational(3, 2), 3) == Rational(27, 8));
}

TEST_CASE("contract validation") {
  SystemContract c;
  CHECK_NOTHROW(c.validate());
  c.extension_base = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  c.extension_base = 2;
  c.certifying = false;
  CHECK_THROWS_AS(c.validate(), Error);
  c.mode = OracleMode::Permissive;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("membership examples") {
  auto h = testing::hs(3, {{0, 1}, {1, 2}});
  CHECK(h->is_member(set_of({1})));
  CHECK_FALSE(h->is_member(ElementSet{}));
  auto t = testing::three_cycle();
  CHECK_FALSE(t->is_member(ElementSet{}));
  CHECK(t->is_member(set_of({2})));
}

TEST_CASE("extension examples and query validation") {
  auto h = testing::hs(4, {{0, 1}, {2, 3}});
  auto yes = h->extend({ElementSet{}, 2});
  REQUIRE(yes.yes());
  REQUIRE(yes.witness);
  CHECK(h->is_member(*yes.witness));
  CHECK(yes.witness->size() <= 2);
  CHECK_FALSE(h->extend({set_of({0}), 0}).yes());
  auto at_member = h->extend({set_of({0, 2}), 0});
  CHECK(at_member.yes());
  CHECK(at_member.witness == ElementSet{});

  try {
    h->extend({set_of({0}), 4});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceedsUniverse);
  }
  try {
    h->extend({set_of({7}), 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParams);
  }
}

TEST_CASE("membership is pure under re-query") {
  std::mt19937_64 rng(11);
  auto h = std::make_shared<HittingSetSystem>(gen::random_uniform_hitting_set(10, 12, 3, rng));
  for (int i = 0; i < 500; ++i) {
    ElementSet s(rng() & 0x3ff);
    const bool first = h->is_member(s);
    CHECK(h->is_member(s) == first);
  }
}

TEST_CASE("error messages carry the code name") {
  Error e(ErrorCode::TooLarge, "x");
  CHECK(std::string(e.what()).find("TooLarge") != std::string::npos);
  CHECK(to_string(Decision::Yes) == "yes");
}
