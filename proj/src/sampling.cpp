#include "rainbow/rng.hpp"
#include "rainbow/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace rainbow {

namespace mp = boost::multiprecision;

const char* to_string(SampleStage s) {
  switch (s) {
    case SampleStage::Sampling: return "sampling";
    case SampleStage::LocalSearch: return "local-search";
    case SampleStage::Extension: return "extension";
  }
  return "unknown";
}

Real chernoff_tail(std::uint64_t n_trials, const Real& p, const Real& epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw InvalidParameter("chernoff_tail needs 0 < epsilon < 1");
  if (!(p > 0 && p < 1)) throw InvalidParameter("chernoff_tail needs 0 < p < 1");
  const Real mean = Real(n_trials) * p;
  return 2 * mp::exp(-(epsilon * epsilon) * mean / 3);
}

namespace {

// n * 2 exp(-eps^2 E / 3) for the event "fewer than threshold successes"
// where E = trials * prob, with eps = 1 - threshold / E.
std::optional<Real> union_failure_bound(std::size_t colors, std::size_t trials, const Real& prob,
                                        const Real& threshold) {
  if (!(prob > 0 && prob < 1) || trials == 0) return std::nullopt;
  const Real mean = Real(trials) * prob;
  const Real eps = 1 - threshold / mean;
  if (!(eps > 0 && eps < 1)) return std::nullopt;
  return Real(colors) * chernoff_tail(trials, prob, eps);
}

}  // namespace

SampleResult sample_and_extend(const Instance& inst, std::size_t target, std::uint64_t seed,
                               const SampleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = inst.num_colors();
  if (target > n) throw InvalidParameter("target exceeds the number of matchings");

  SampleResult result;
  result.report.solver = "sample";
  result.report.certificate = Certificate::Heuristic;
  result.report.stats.seed = seed;
  auto& diag = result.diagnostics;

  const auto r = static_cast<unsigned>(std::max(inst.r, 1));
  const std::size_t vertices = inst.vertex_count();
  diag.p = n == 0 ? 1.0
                  : std::min(1.0, 4.0 * std::pow(static_cast<double>(n), -1.0 / (2.0 * r)));

  // Sampling thresholds, compared in integers:
  //   inside   >= r 2^r sqrt(n)  <=>  inside^2 >= (r 2^r)^2 n
  //   avoiding >= (r+1) n / 2     <=>  2 avoiding >= (r+1) n
  const Integer inside_coeff = Integer(r) << r;
  const Integer inside_sq = inside_coeff * inside_coeff * n;
  auto checks_pass = [&](std::size_t inside, std::size_t avoiding) {
    return Integer(inside) * inside >= inside_sq && Integer(2) * avoiding >= Integer(r + 1) * n;
  };

  Rng rng(seed);
  std::vector<bool> in_sample;
  const unsigned attempts = std::max(1u, opts.retries);
  for (unsigned attempt = 0; attempt < attempts; ++attempt) {
    in_sample.assign(vertices, false);
    for (std::size_t v = 0; v < vertices; ++v) in_sample[v] = rng.bernoulli(diag.p);

    std::size_t min_inside = SIZE_MAX, min_avoiding = SIZE_MAX;
    for (const auto& m : inst.matchings) {
      std::size_t inside = 0, avoiding = 0;
      for (const auto& e : m.edges) {
        std::size_t hits = static_cast<std::size_t>(std::count_if(
            e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return in_sample[v]; }));
        if (hits == e.size()) ++inside;
        if (hits == 0) ++avoiding;
      }
      min_inside = std::min(min_inside, inside);
      min_avoiding = std::min(min_avoiding, avoiding);
    }
    if (n == 0) min_inside = min_avoiding = 0;
    diag.attempts = attempt + 1;
    diag.min_inside = min_inside;
    diag.min_avoiding = min_avoiding;
    if (n == 0 || checks_pass(min_inside, min_avoiding)) {
      diag.checks_passed = true;
      break;
    }
  }
  diag.sample_vertices =
      static_cast<std::size_t>(std::count(in_sample.begin(), in_sample.end(), true));

  const std::size_t s = inst.min_matching_size();
  const Real p = diag.p;
  diag.inside_failure_bound =
      union_failure_bound(n, s, mp::pow(p, r), Real(inside_coeff) * mp::sqrt(Real(n)));
  diag.avoiding_failure_bound =
      union_failure_bound(n, s, mp::pow(1 - p, r), Real(r + 1) * Real(n) / 2);

  // Solve on H - S.
  Instance outside;
  outside.r = inst.r;
  outside.partition = inst.partition;
  outside.matchings.resize(n);
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& e : inst.matchings[c].edges)
      if (std::none_of(e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return in_sample[v]; }))
        outside.matchings[c].edges.push_back(e);
  SolveReport off = local_search_rainbow(outside);
  diag.off_sample_size = off.size();
  result.report.stats.extensions = off.stats.extensions;
  result.report.stats.swaps = off.stats.swaps;

  // Finish greedily inside S.
  RainbowMatching rm = off.matching;
  std::vector<bool> covered(vertices, false), used(n, false);
  for (const auto& ce : rm.assignment) {
    used[ce.color] = true;
    for (Vertex v : ce.edge.vertices) covered[v] = true;
  }
  for (Color c = 0; c < n && rm.size() < target; ++c) {
    if (used[c]) continue;
    for (const auto& e : inst.matchings[c].edges) {
      bool fits = std::all_of(e.vertices.begin(), e.vertices.end(),
                              [&](Vertex v) { return in_sample[v] && !covered[v]; });
      if (!fits) continue;
      for (Vertex v : e.vertices) covered[v] = true;
      used[c] = true;
      rm.assignment.push_back(ColoredEdge{c, e});
      ++result.report.stats.extensions;
      break;
    }
  }
  rm.normalize();
  result.report.matching = std::move(rm);
  result.report.stats.nodes = diag.attempts;
  result.success = result.report.size() >= target;

  if (!result.success) {
    // The off-sample stage falls short when n - m > 2^r sqrt(n).
    const std::size_t m = diag.off_sample_size;
    const Integer gap = Integer(n) - Integer(m);
    const bool below_weak = gap > 0 && gap * gap > (Integer(1) << (2 * r)) * n;
    if (!diag.checks_passed) {
      result.failed_stage = SampleStage::Sampling;
      result.failure_reason = "no sample met both edge-count checks within " +
                              std::to_string(diag.attempts) + " attempts (min inside " +
                              std::to_string(diag.min_inside) + ", min avoiding " +
                              std::to_string(diag.min_avoiding) + ")";
    } else if (below_weak) {
      result.failed_stage = SampleStage::LocalSearch;
      result.failure_reason = "off-sample matching of size " + std::to_string(m) +
                              " is below n - 2^r sqrt(n)";
    } else {
      result.failed_stage = SampleStage::Extension;
      result.failure_reason = "greedy extension inside the sample stopped at " +
                              std::to_string(result.report.size()) + " of " +
                              std::to_string(target);
    }
  }
  result.report.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace rainbow
