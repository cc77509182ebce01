#pragma once

#include "rainbow/bounds.hpp"
#include "rainbow/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

enum class Certificate { ExactOptimum, LocalOptimum, Heuristic };

const char* to_string(Certificate c);
std::optional<Certificate> certificate_from_string(const std::string& s);

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t extensions = 0;
  std::uint64_t swaps = 0;
  double wall_ms = 0.0;
  std::optional<std::uint64_t> seed;
};

struct SolveReport {
  std::string solver;
  RainbowMatching matching;
  Certificate certificate = Certificate::Heuristic;
  SolveStats stats;

  std::size_t size() const { return matching.size(); }
};

struct ExactOptions {
  // Search nodes allowed before giving up with a heuristic certificate.
  std::optional<std::uint64_t> node_budget;
  // Explore root branches on worker threads. The reported size is
  // deterministic; the witness matching may differ between runs.
  bool parallel = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Branch and bound over color classes (identical matchings are merged and
// their edges taken in increasing index order). Branches on the class with
// the fewest compatible edges and prunes against the number of usable
// colors, the free covered vertices, and r times a greedy maximal disjoint
// edge set.
SolveReport exact_max_rainbow(const Instance& inst, const ExactOptions& opts = {});

// First-fit: each color in order takes its first edge disjoint from the
// current matching. Throws InvalidParameter unless color_order permutes [n].
SolveReport greedy_rainbow(const Instance& inst, const std::vector<Color>& color_order);
SolveReport greedy_rainbow(const Instance& inst);

struct Extension {
  Color color = 0;
  Edge edge;
};

// Removing the edge at `edge_pos` and adding first/second grows rm by one.
struct Swap {
  std::size_t edge_pos = 0;
  Color first_color = 0;
  Edge first;
  Color second_color = 0;
  Edge second;
};

// An edge of an unused color disjoint from V(rm), lowest color first.
std::optional<Extension> find_extension(const Instance& inst, const RainbowMatching& rm);

// Two edges of distinct unused colors, vertex-disjoint, each meeting V(rm)
// only inside the same matching edge e.
std::optional<Swap> find_swap(const Instance& inst, const RainbowMatching& rm);

// Extension + swap local search starting from greedy. A seed shuffles the
// greedy color order; without one the identity order is used.
SolveReport local_search_rainbow(const Instance& inst,
                                 std::optional<std::uint64_t> seed = std::nullopt);

// Grows `start` (which must be rainbow) by extension and swap moves.
SolveReport improve_locally(const Instance& inst, RainbowMatching start);

struct GoodWitness {
  std::size_t edge_pos = 0;  // position in the rainbow matching
  Edge first;
  Edge second;
};

struct ColorGoodness {
  Color color = 0;
  std::vector<GoodWitness> good;  // one entry per good edge of rm
  std::size_t g = 0;              // number of good edges
  std::size_t h = 0;              // edges of the color meeting exactly one edge of rm
  std::size_t matching_size = 0;
};

struct GoodEdgeTable {
  int r = 0;
  RainbowMatching matching;
  std::vector<ColorGoodness> unused;  // ascending color order

  // Colors for which the edge at `edge_pos` is good, with its witnesses.
  std::vector<std::pair<Color, const GoodWitness*>> good_colors_of(std::size_t edge_pos) const;
  std::size_t total_good() const;
};

// Requires rm to be a rainbow matching with no extension available; throws
// PreconditionViolation naming an extending edge otherwise.
GoodEdgeTable good_edges(const Instance& inst, const RainbowMatching& rm);

// 2 exp(-eps^2 n p / 3). Throws InvalidParameter unless 0 < eps < 1 and 0 < p < 1.
Real chernoff_tail(std::uint64_t n_trials, const Real& p, const Real& epsilon);

enum class SampleStage { Sampling, LocalSearch, Extension };
const char* to_string(SampleStage s);

struct SampleOptions {
  unsigned retries = 20;
};

struct SampleDiagnostics {
  double p = 0.0;  // vertex inclusion probability, capped at 1
  unsigned attempts = 0;
  bool checks_passed = false;
  std::size_t min_inside = 0;    // fewest edges of a color inside S
  std::size_t min_avoiding = 0;  // fewest edges of a color avoiding S
  std::size_t sample_vertices = 0;
  std::size_t off_sample_size = 0;  // local search result on H - S
  // Union-bound failure probabilities for the two sampling events; absent
  // when the Chernoff parameters fall outside (0, 1).
  std::optional<Real> inside_failure_bound;
  std::optional<Real> avoiding_failure_bound;
};

struct SampleResult {
  bool success = false;
  std::optional<SampleStage> failed_stage;
  std::string failure_reason;
  SolveReport report;  // the matching reached, complete or not
  SampleDiagnostics diagnostics;
};

// Reserve a random vertex set S, solve on edges avoiding S, then finish
// greedily with edges inside S. Succeeds when the result reaches `target`.
SampleResult sample_and_extend(const Instance& inst, std::size_t target, std::uint64_t seed,
                               const SampleOptions& opts = {});

}  // namespace rainbow
