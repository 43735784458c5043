#pragma once

// Seeded random instance generators for tests, verification and benchmarks.

#include <random>

#include "mls/problems/cnf.hpp"
#include "mls/problems/hitting_set.hpp"
#include "mls/problems/tournament.hpp"

namespace mls::gen {

using Rng = std::mt19937_64;

/// m sets, each of uniform size in [1, d] (capped at n), distinct elements.
HittingSetInstance random_hitting_set(int n, int m, int d, Rng& rng);

/// m sets of size exactly d.
HittingSetInstance random_uniform_hitting_set(int n, int m, int d, Rng& rng);

/// Every set meets `planted`, so planted is a hitting set.
HittingSetInstance planted_hitting_set(int n, int m, int d, ElementSet planted, Rng& rng);

/// m clauses of width in [1, d]; each literal positive with probability
/// `positive_bias`.
CnfInstance random_cnf(int n, int m, int d, double positive_bias, Rng& rng);

/// Uniformly random orientation of K_n.
TournamentInstance random_tournament(int n, Rng& rng);

/// u beats v iff u < v (triangle free).
TournamentInstance transitive_tournament(int n);

ElementSet random_subset(int n, int size, Rng& rng);

}  // namespace mls::gen
