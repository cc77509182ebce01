#pragma once

#include "rainbow/bounds.hpp"
#include "rainbow/core.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rainbow {

using IntSet = std::vector<std::int64_t>;  // sorted, duplicate-free

struct SetPair {
  IntSet a;
  IntSet b;
};

struct SetPairSystem {
  std::vector<SetPair> pairs;

  std::size_t size() const { return pairs.size(); }

  static SetPairSystem from(std::vector<std::pair<IntSet, IntSet>> raw);
};

// (i, j) names the failing pair; i == j means A_i meets B_i.
struct CrossCheck {
  bool ok = false;
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

// Throws InvalidParameter for systems with fewer than two pairs.
CrossCheck is_cross_intersecting(const SetPairSystem& sys);

// Sum over i of 1 / binom(|A_i| + |B_i|, |A_i|).
Rational bollobas_sum(const SetPairSystem& sys);

struct GoodEdgeTable;

// For the edge at position `edge_pos` of rm, pairs each good unused color's
// two witnesses as (f_1..f_l, f_1'..f_l') against (f_1'..f_l', f_1..f_l).
// Throws PreconditionViolation if two of those colors admit a growing swap.
SetPairSystem extract_setpairs(const Instance& inst, const RainbowMatching& rm,
                               std::size_t edge_pos);
SetPairSystem extract_setpairs(const GoodEdgeTable& table, std::size_t edge_pos);

}  // namespace rainbow
