#pragma once

#include <cstdint>
#include <random>

namespace resest {

using Rng = std::mt19937_64;

/// Derives an independent stream seed for sub-task `index` of a master seed
/// (splitmix64 finalizer over the pair).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace resest
