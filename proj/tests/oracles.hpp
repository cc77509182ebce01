#pragma once

// Test-only reference implementations. They share no code path with the
// library algorithms they check.

#include "rainbow/bounds.hpp"
#include "rainbow/core.hpp"

#include <cstddef>
#include <cstdint>

namespace rainbow::oracle {

// Enumerates every injective color-to-edge map (each color either unused or
// mapped to one of its edges) and keeps the largest vertex-disjoint one.
std::size_t brute_force_max_rainbow(const Instance& inst);

// Binary search on y^k <= x using plain repeated multiplication.
Integer floor_root_by_bisection(const Integer& x, unsigned k);

// Pascal's triangle row by row.
Integer pascal_binomial(unsigned n, unsigned k);

// n matchings over r*max_size + r vertices with sizes drawn from
// [1, max_size]; test fuel with uneven matching sizes.
Instance ragged_instance(int r, int n, int max_size, std::uint64_t seed);

}  // namespace rainbow::oracle
