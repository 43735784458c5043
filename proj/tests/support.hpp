#pragma once

// Instance builders and naive reference computations shared by the tests.
// Nothing here calls into the library's own search code.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <random>
#include <vector>

#include "mls/element_set.hpp"
#include "mls/problems/cnf.hpp"
#include "mls/problems/generators.hpp"
#include "mls/problems/hitting_set.hpp"
#include "mls/problems/tournament.hpp"

namespace testing {

using mls::ElementSet;

inline ElementSet set_of(std::initializer_list<int> elems) {
  ElementSet s;
  for (int e : elems) s.insert(e);
  return s;
}

inline std::shared_ptr<mls::HittingSetSystem> hs(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<ElementSet> v;
  for (auto s : sets) v.push_back(set_of(s));
  return std::make_shared<mls::HittingSetSystem>(mls::make_hitting_set(n, v));
}

// Clauses as signed 1-based literals, DIMACS style.
inline std::shared_ptr<mls::CnfSystem> cnf(int n, std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<mls::Clause> v;
  for (auto c : clauses) {
    mls::Clause cl;
    for (int lit : c) (lit > 0 ? cl.positives : cl.negatives).insert((lit > 0 ? lit : -lit) - 1);
    v.push_back(cl);
  }
  return std::make_shared<mls::CnfSystem>(mls::make_cnf(n, v));
}

// 0 -> 1 -> 2 -> 0.
inline std::shared_ptr<mls::TournamentSystem> three_cycle() {
  return std::make_shared<mls::TournamentSystem>(
      mls::make_tournament(3, {set_of({1}), set_of({2}), set_of({0})}));
}

inline std::shared_ptr<mls::TournamentSystem> tournament(int n, std::mt19937_64& rng) {
  return std::make_shared<mls::TournamentSystem>(mls::gen::random_tournament(n, rng));
}

inline std::uint64_t naive_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Plain-loop membership checks written independently of the backends.
inline bool naive_hits(const std::vector<ElementSet>& sets, ElementSet s) {
  for (ElementSet c : sets)
    if ((c.bits() & s.bits()) == 0) return false;
  return true;
}

inline bool naive_satisfies(const std::vector<mls::Clause>& clauses, ElementSet ones) {
  for (const auto& c : clauses) {
    bool sat = (c.positives.bits() & ones.bits()) != 0 || (c.negatives.bits() & ~ones.bits()) != 0;
    if (!sat) return false;
  }
  return true;
}

inline bool naive_acyclic(const mls::TournamentInstance& t, ElementSet removed) {
  const int n = t.vertices.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (removed.contains(a) || removed.contains(b) || removed.contains(c)) continue;
        if (t.beats(a, b) && t.beats(b, c) && t.beats(c, a)) return false;
      }
  return true;
}

// Every subset of [n] as a list, used for tiny exhaustive sweeps.
inline std::vector<ElementSet> all_subsets(int n) {
  std::vector<ElementSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.emplace_back(m);
  return out;
}

}  // namespace testing
