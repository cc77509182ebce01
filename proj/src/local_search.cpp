#include "rainbow/rng.hpp"
#include "rainbow/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace rainbow {

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::ExactOptimum: return "exact-optimum";
    case Certificate::LocalOptimum: return "local-optimum";
    case Certificate::Heuristic: return "heuristic";
  }
  return "heuristic";
}

std::optional<Certificate> certificate_from_string(const std::string& s) {
  for (Certificate c : {Certificate::ExactOptimum, Certificate::LocalOptimum, Certificate::Heuristic})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Which position of the rainbow matching covers each vertex (-1 if none).
std::vector<long> owner_map(const Instance& inst, const RainbowMatching& rm) {
  std::size_t count = inst.vertex_count();
  for (const auto& ce : rm.assignment)
    for (Vertex v : ce.edge.vertices) count = std::max<std::size_t>(count, std::size_t{v} + 1);
  std::vector<long> owner(count, -1);
  for (std::size_t pos = 0; pos < rm.assignment.size(); ++pos)
    for (Vertex v : rm.assignment[pos].edge.vertices) owner[v] = static_cast<long>(pos);
  return owner;
}

std::vector<bool> used_colors(const Instance& inst, const RainbowMatching& rm) {
  std::vector<bool> used(inst.num_colors(), false);
  for (const auto& ce : rm.assignment)
    if (ce.color < used.size()) used[ce.color] = true;
  return used;
}

bool is_free(const Edge& e, const std::vector<long>& owner) {
  return std::all_of(e.vertices.begin(), e.vertices.end(),
                     [&](Vertex v) { return owner[v] < 0; });
}

// f meets V(M) only inside the matching edge at `pos`.
bool is_local_to(const Edge& f, const std::vector<long>& owner, long pos) {
  return std::all_of(f.vertices.begin(), f.vertices.end(),
                     [&](Vertex v) { return owner[v] < 0 || owner[v] == pos; });
}

// Positions of rm ordered by color, then edge.
std::vector<std::size_t> positions_by_color(const RainbowMatching& rm) {
  std::vector<std::size_t> order(rm.assignment.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = rm.assignment[a];
    const auto& y = rm.assignment[b];
    return x.color != y.color ? x.color < y.color : x.edge < y.edge;
  });
  return order;
}

}  // namespace

SolveReport greedy_rainbow(const Instance& inst, const std::vector<Color>& color_order) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.num_colors();
  if (color_order.size() != n) throw InvalidParameter("color order must list every color once");
  std::vector<bool> seen(n, false);
  for (Color c : color_order) {
    if (c >= n || seen[c]) throw InvalidParameter("color order is not a permutation");
    seen[c] = true;
  }

  SolveReport report;
  report.solver = "greedy";
  std::vector<bool> covered(inst.vertex_count(), false);
  for (Color c : color_order) {
    for (const auto& e : inst.matchings[c].edges) {
      if (std::any_of(e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return covered[v]; }))
        continue;
      for (Vertex v : e.vertices) covered[v] = true;
      report.matching.assignment.push_back(ColoredEdge{c, e});
      break;
    }
  }
  report.certificate = Certificate::Heuristic;
  report.stats.wall_ms = elapsed_ms(start);
  return report;
}

SolveReport greedy_rainbow(const Instance& inst) {
  std::vector<Color> order(inst.num_colors());
  std::iota(order.begin(), order.end(), Color{0});
  return greedy_rainbow(inst, order);
}

std::optional<Extension> find_extension(const Instance& inst, const RainbowMatching& rm) {
  const auto owner = owner_map(inst, rm);
  const auto used = used_colors(inst, rm);
  for (Color c = 0; c < inst.num_colors(); ++c) {
    if (used[c]) continue;
    for (const auto& e : inst.matchings[c].edges)
      if (is_free(e, owner)) return Extension{c, e};
  }
  return std::nullopt;
}

std::optional<Swap> find_swap(const Instance& inst, const RainbowMatching& rm) {
  const auto owner = owner_map(inst, rm);
  const auto used = used_colors(inst, rm);
  std::vector<Color> unused;
  for (Color c = 0; c < inst.num_colors(); ++c)
    if (!used[c]) unused.push_back(c);
  if (unused.size() < 2) return std::nullopt;

  std::vector<std::vector<const Edge*>> local(unused.size());
  for (std::size_t pos : positions_by_color(rm)) {
    const long p = static_cast<long>(pos);
    for (std::size_t u = 0; u < unused.size(); ++u) {
      local[u].clear();
      for (const auto& f : inst.matchings[unused[u]].edges)
        if (is_local_to(f, owner, p)) local[u].push_back(&f);
    }
    for (std::size_t a = 0; a < unused.size(); ++a) {
      for (std::size_t b = a + 1; b < unused.size(); ++b) {
        for (const Edge* f : local[a])
          for (const Edge* g : local[b])
            if (!f->intersects(*g)) return Swap{pos, unused[a], *f, unused[b], *g};
      }
    }
  }
  return std::nullopt;
}

SolveReport improve_locally(const Instance& inst, RainbowMatching start) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!is_rainbow_matching(inst, start))
    throw InvalidParameter("local search needs a rainbow starting matching");
  SolveReport report;
  report.solver = "local";
  report.matching = std::move(start);

  // Each move grows the matching by one, so the loop runs at most n times.
  while (true) {
    if (auto ext = find_extension(inst, report.matching)) {
      report.matching.assignment.push_back(ColoredEdge{ext->color, ext->edge});
      ++report.stats.extensions;
      continue;
    }
    if (auto swap = find_swap(inst, report.matching)) {
      auto& a = report.matching.assignment;
      a.erase(a.begin() + static_cast<long>(swap->edge_pos));
      a.push_back(ColoredEdge{swap->first_color, swap->first});
      a.push_back(ColoredEdge{swap->second_color, swap->second});
      ++report.stats.swaps;
      continue;
    }
    break;
  }
  report.matching.normalize();
  report.certificate = Certificate::LocalOptimum;
  report.stats.wall_ms = elapsed_ms(t0);
  return report;
}

SolveReport local_search_rainbow(const Instance& inst, std::optional<std::uint64_t> seed) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Color> order(inst.num_colors());
  std::iota(order.begin(), order.end(), Color{0});
  if (seed) {
    Rng rng(*seed);
    rng.shuffle(order);
  }
  SolveReport report = improve_locally(inst, greedy_rainbow(inst, order).matching);
  report.stats.seed = seed;
  report.stats.wall_ms = elapsed_ms(t0);
  return report;
}

std::vector<std::pair<Color, const GoodWitness*>> GoodEdgeTable::good_colors_of(
    std::size_t edge_pos) const {
  std::vector<std::pair<Color, const GoodWitness*>> out;
  for (const auto& cg : unused)
    for (const auto& w : cg.good)
      if (w.edge_pos == edge_pos) out.emplace_back(cg.color, &w);
  return out;
}

std::size_t GoodEdgeTable::total_good() const {
  std::size_t total = 0;
  for (const auto& cg : unused) total += cg.g;
  return total;
}

GoodEdgeTable good_edges(const Instance& inst, const RainbowMatching& rm) {
  if (!is_rainbow_matching(inst, rm))
    throw InvalidParameter("good_edges needs a rainbow matching");
  if (auto ext = find_extension(inst, rm))
    throw PreconditionViolation("matching is not maximal: color " + std::to_string(ext->color) +
                                " edge " + to_string(ext->edge) + " extends it");

  GoodEdgeTable table;
  table.r = inst.r;
  table.matching = rm;
  const auto owner = owner_map(inst, rm);
  const auto used = used_colors(inst, rm);

  for (Color c = 0; c < inst.num_colors(); ++c) {
    if (used[c]) continue;
    ColorGoodness cg;
    cg.color = c;
    cg.matching_size = inst.matchings[c].size();

    // Maximality means every edge meets V(M); sort them by the matching
    // edges they touch.
    std::vector<std::vector<const Edge*>> local(rm.size());
    for (const auto& f : inst.matchings[c].edges) {
      long only = -1;
      bool single = true;
      for (Vertex v : f.vertices) {
        long o = owner[v];
        if (o < 0) continue;
        if (only < 0)
          only = o;
        else if (o != only)
          single = false;
      }
      if (single && only >= 0) {
        ++cg.h;
        local[static_cast<std::size_t>(only)].push_back(&f);
      }
    }
    for (std::size_t pos = 0; pos < rm.size(); ++pos) {
      if (local[pos].size() >= 2)
        cg.good.push_back(GoodWitness{pos, *local[pos][0], *local[pos][1]});
    }
    cg.g = cg.good.size();
    table.unused.push_back(std::move(cg));
  }
  return table;
}

}  // namespace rainbow
