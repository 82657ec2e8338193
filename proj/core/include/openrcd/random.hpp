#pragma once

#include <cstdint>
#include <random>

namespace openrcd {

/// Random stream used throughout the library. Each replication owns one.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

}  // namespace openrcd
