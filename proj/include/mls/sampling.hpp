#pragma once

#include <cstdint>
#include <random>

#include "mls/element_set.hpp"

namespace mls {

using RngStream = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Independent stream for one (target size, repetition) cell. A pure function
/// of its arguments, so repetitions can run in any order on any thread.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t target_size, std::uint64_t repetition);

/// Uniform t-subset of `pool` by a partial Fisher-Yates shuffle of the pool's
/// elements. Throws InvalidParams when t < 0 or t > |pool|.
ElementSet uniform_t_subset(ElementSet pool, int t, RngStream& rng);

}  // namespace mls
