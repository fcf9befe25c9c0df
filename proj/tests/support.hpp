#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "titsring/linalg.hpp"

namespace titsring::testing_support {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0x5eed);
    return engine;
}

inline std::uint64_t uniform(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng());
}

inline Vec random_vec(const Ring& ring, int n) {
    Vec v(static_cast<std::size_t>(n));
    for (auto& x : v) x = static_cast<Elem>(uniform(ring.size()));
    return v;
}

inline Matrix random_matrix(const RingPtr& ring, int rows, int cols) {
    Matrix m(ring, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = static_cast<Elem>(uniform(ring->size()));
    return m;
}

/// Rings exercised by every property test: local, non-local, and products.
inline const std::vector<const char*>& sample_rings() {
    static const std::vector<const char*> rings = {"F2", "F3", "Z/4", "Z/6", "Z/8", "Z/9", "F2[e]", "F3[e]^2", "F2[e]^3",
                                                   "Z/2xZ/3", "Z/4xF3"};
    return rings;
}

}  // namespace titsring::testing_support
