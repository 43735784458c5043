#include "mls/sampling.hpp"

#include <array>

#include "mls/error.hpp"

namespace mls {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t target_size, std::uint64_t repetition) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ mix64(target_size + 0x51ed2701ULL));
  h = mix64(h ^ mix64(repetition + 0x2545f491ULL));
  return RngStream(h);
}

ElementSet uniform_t_subset(ElementSet pool, int t, RngStream& rng) {
  const int m = pool.size();
  if (t < 0 || t > m)
    throw Error(ErrorCode::InvalidParams, "cannot draw " + std::to_string(t) + " of " + std::to_string(m) + " elements");
  std::array<int, 64> items{};
  int count = 0;
  pool.for_each([&](int e) { items[static_cast<std::size_t>(count++)] = e; });
  ElementSet out;
  for (int i = 0; i < t; ++i) {
    std::uniform_int_distribution<int> pick(i, m - 1);
    int j = pick(rng);
    std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
    out.insert(items[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace mls
