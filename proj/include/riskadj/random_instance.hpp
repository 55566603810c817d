#pragma once

#include <cstddef>
#include <random>

#include "riskadj/moments.hpp"

namespace riskadj {

/// Omega = A^t A + n * 1e-3 * I with A (n x n) standard normal; mu standard
/// normal, redrawn until consecutive sorted means differ by more than 1e-6.
AssetMoments random_instance(std::size_t n, std::mt19937_64& rng);

} // namespace riskadj
