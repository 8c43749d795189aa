#pragma once

#include <boost/random/mersenne_twister.hpp>
#include <cstdint>

namespace blab {

using Rng = boost::random::mt19937_64;

// Independent stream for trajectory `index` of the experiment seeded with
// `seed`; `tag` separates estimators that share a seed. The result depends
// only on (seed, tag, index), never on the worker that draws it.
Rng make_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0);

// Uniform integer in [0, n).
std::uint32_t uniform_below(Rng& rng, std::uint32_t n);

}  // namespace blab
