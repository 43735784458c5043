#include "mls/problems/generators.hpp"

#include <algorithm>
#include <numeric>

namespace mls::gen {

ElementSet random_subset(int n, int size, Rng& rng) {
  std::vector<int> items(static_cast<std::size_t>(n));
  std::iota(items.begin(), items.end(), 0);
  ElementSet s;
  for (int i = 0; i < size; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    int j = pick(rng);
    std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
    s.insert(items[static_cast<std::size_t>(i)]);
  }
  return s;
}

HittingSetInstance random_hitting_set(int n, int m, int d, Rng& rng) {
  std::vector<ElementSet> sets;
  int width = std::min(d, n);
  std::uniform_int_distribution<int> size(1, std::max(1, width));
  for (int i = 0; i < m && n > 0; ++i) sets.push_back(random_subset(n, size(rng), rng));
  return make_hitting_set(n, std::move(sets));
}

HittingSetInstance random_uniform_hitting_set(int n, int m, int d, Rng& rng) {
  std::vector<ElementSet> sets;
  for (int i = 0; i < m && n > 0; ++i) sets.push_back(random_subset(n, std::min(d, n), rng));
  return make_hitting_set(n, std::move(sets));
}

HittingSetInstance planted_hitting_set(int n, int m, int d, ElementSet planted, Rng& rng) {
  std::vector<ElementSet> sets;
  std::vector<int> inside = planted.elements();
  while (static_cast<int>(sets.size()) < m) {
    ElementSet s = random_subset(n, std::min(d, n), rng);
    if (!s.intersects(planted)) {
      std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
      s.erase(s.lowest());
      s.insert(inside[pick(rng)]);
    }
    sets.push_back(s);
  }
  return make_hitting_set(n, std::move(sets));
}

CnfInstance random_cnf(int n, int m, int d, double positive_bias, Rng& rng) {
  std::vector<Clause> clauses;
  std::uniform_int_distribution<int> width(1, std::max(1, std::min(d, n)));
  std::bernoulli_distribution positive(positive_bias);
  for (int i = 0; i < m && n > 0; ++i) {
    ElementSet vars = random_subset(n, width(rng), rng);
    Clause c;
    vars.for_each([&](int v) { (positive(rng) ? c.positives : c.negatives).insert(v); });
    clauses.push_back(c);
  }
  return make_cnf(n, std::move(clauses));
}

TournamentInstance random_tournament(int n, Rng& rng) {
  std::vector<ElementSet> out(static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(0.5);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) out[static_cast<std::size_t>(u)].insert(v);
      else out[static_cast<std::size_t>(v)].insert(u);
    }
  return make_tournament(n, std::move(out));
}

TournamentInstance transitive_tournament(int n) {
  std::vector<ElementSet> out(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) out[static_cast<std::size_t>(u)] = ElementSet::full(n) - ElementSet::full(u + 1);
  return make_tournament(n, std::move(out));
}

}  // namespace mls::gen
