#include "blab/rng.hpp"

#include <boost/random/seed_seq.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace blab {

Rng make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  boost::random::seed_seq seq{lo(seed), hi(seed), lo(tag), hi(tag),
                              lo(index), hi(index)};
  return Rng(seq);
}

std::uint32_t uniform_below(Rng& rng, std::uint32_t n) {
  return boost::random::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng);
}

}  // namespace blab
