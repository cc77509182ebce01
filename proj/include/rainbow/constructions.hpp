#pragma once

#include "rainbow/core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rainbow {

// n matchings admitting no rainbow matching of size blocked_size.
struct BlockingFamily {
  Instance inst;
  std::size_t blocked_size = 0;
};

// The two alternating perfect matchings M, M' of C_2n: colors 0..n-2 get M,
// color n-1 gets M'. Bipartition by vertex parity.
Instance cycle_instance(int n);

// (n+1)/2 disjoint K4s, 3-edge-colored; n-2 red copies, one green, one blue.
Instance k4_union_instance(int n);

// One gadget on {a_1..a_r, b_1..b_r}: for each T containing 1, the color
// class {e_T, f_T} with e_T = {a_i : i in T} + {b_i : i not in T}.
Instance ach_gadget(int r);

// n/2 disjoint gadget copies. Matchings 0..2^{r-1}-2 carry the matching
// classes in order, the rest all carry the last class. Requires n even and
// n >= 2^{r-1}.
Instance ach_instance(int r, int n);

// Keeps the first `size` edges of every matching.
Instance truncate_matchings(const Instance& inst, std::size_t size);

// Disjoint union of the parts with matching j the union of each part's
// matching j. Vertex blocks are laid out contiguously; offsets are recorded
// in the provenance. The result is blocked at sum(t_i) - q + 1.
BlockingFamily blowup_compose(const std::vector<BlockingFamily>& parts);

// Appends m shared, pairwise disjoint edges on fresh vertices to every
// matching. m = 0 returns the input unchanged.
Instance dummy_lift(const Instance& inst, int m);

struct BlockingSearchOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 2000;  // candidate evaluations across all workers
  unsigned workers = 1;
  std::uint64_t node_budget = 2'000'000;  // per exact verification
  std::uint64_t steps_per_restart = 60;
};

// Randomized-restart local search over assignments of gadget color classes
// to matchings. Only candidates the exact solver certifies are returned.
std::optional<BlockingFamily> find_blocking_family(int r, int n, int t,
                                                   const BlockingSearchOptions& opts = {});

struct PszParams {
  std::int64_t n = 0;
  std::int64_t a = 0;
  std::int64_t t = 0;
  std::int64_t q = 0;
  std::int64_t s = 0;
  std::int64_t t_prime = 0;
  std::int64_t bound = 0;  // n - q
  bool q_bound_holds = false;  // q >= n^{(r-1)/r} / (12 r), checked exactly
};

// Parameters of the composition recipe for n > 6^r; throws
// InvalidParameter outside that domain.
PszParams psz_composition_params(int r, std::int64_t n);

// n matchings of s uniformly random disjoint r-sets over r*s + r vertices.
Instance random_instance(int r, int n, int s, std::uint64_t seed);

}  // namespace rainbow
