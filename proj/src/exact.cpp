#include "rainbow/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace rainbow {

namespace {

using Word = std::uint64_t;

// Matchings with identical edge lists, searched as one class of capacity
// colors.size().
struct ColorClass {
  std::vector<Color> colors;
  std::vector<std::size_t> edges;  // global edge ids, matching order
};

struct Problem {
  std::size_t words = 1;
  std::size_t r = 2;
  std::vector<Word> masks;      // edges x words
  std::vector<Edge> edge_list;  // global edge id -> edge
  std::vector<ColorClass> classes;

  const Word* mask(std::size_t edge_id) const { return masks.data() + edge_id * words; }
};

Problem build_problem(const Instance& inst) {
  Problem p;
  p.r = static_cast<std::size_t>(std::max(inst.r, 1));
  p.words = std::max<std::size_t>(1, (inst.vertex_count() + 63) / 64);

  std::map<std::vector<Edge>, std::size_t> class_of;
  for (Color c = 0; c < inst.num_colors(); ++c) {
    const auto& edges = inst.matchings[c].edges;
    if (edges.empty()) continue;
    auto [it, fresh] = class_of.emplace(edges, p.classes.size());
    if (fresh) {
      ColorClass cls;
      for (const auto& e : edges) {
        cls.edges.push_back(p.edge_list.size());
        p.edge_list.push_back(e);
        std::vector<Word> m(p.words, 0);
        for (Vertex v : e.vertices) m[v / 64] |= Word{1} << (v % 64);
        p.masks.insert(p.masks.end(), m.begin(), m.end());
      }
      p.classes.push_back(std::move(cls));
    }
    p.classes[it->second].colors.push_back(c);
  }
  return p;
}

struct Shared {
  std::atomic<std::size_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> aborted{false};
  std::optional<std::uint64_t> budget;
  std::size_t ceiling = 0;  // no rainbow matching can exceed this

  std::mutex mu;
  std::size_t witness_size = 0;
  std::size_t witness_task = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> witness;  // (class, edge id)

  void offer(std::size_t size, std::size_t task,
             const std::vector<std::pair<std::size_t, std::size_t>>& chosen) {
    std::lock_guard lock(mu);
    if (size > witness_size || (size == witness_size && task < witness_task && size > 0)) {
      witness_size = size;
      witness_task = task;
      witness = chosen;
    }
    std::size_t cur = best.load();
    while (size > cur && !best.compare_exchange_weak(cur, size)) {
    }
    if (size >= ceiling) stop = true;
  }
};

class Search {
 public:
  Search(const Problem& p, Shared& shared, std::size_t task)
      : p_(p), shared_(shared), task_(task) {
    const std::size_t k = p.classes.size();
    taken_.assign(k, 0);
    next_.assign(k, 0);
    closed_.assign(k, false);
    used_.assign(p.words, 0);
    scratch_.assign(p.words, 0);
  }

  // Root branches of the first decision, for parallel dispatch. Each entry
  // is either an edge to take or a close marker (edge = npos).
  std::pair<std::size_t, std::vector<std::size_t>> root_branches() {
    Node node = evaluate();
    std::vector<std::size_t> out;
    if (node.branch_class == npos) return {npos, out};
    for (std::size_t idx = 0; idx < p_.classes[node.branch_class].edges.size(); ++idx)
      if (disjoint(p_.mask(p_.classes[node.branch_class].edges[idx]))) out.push_back(idx);
    out.push_back(npos);
    return {node.branch_class, out};
  }

  void run_branch(std::size_t k, std::size_t idx) {
    if (idx == npos) {
      closed_[k] = true;
      dfs();
      closed_[k] = false;
    } else {
      take(k, idx);
      dfs();
      untake(k, idx);
    }
  }

  void dfs() {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    const std::uint64_t n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared_.budget && n > *shared_.budget) {
      shared_.aborted = true;
      shared_.stop = true;
      return;
    }
    if (chosen_.size() > shared_.best.load(std::memory_order_relaxed))
      shared_.offer(chosen_.size(), task_, chosen_);

    Node node = evaluate();
    if (node.branch_class == npos) return;
    if (chosen_.size() + node.bound <= shared_.best.load(std::memory_order_relaxed)) return;

    const std::size_t k = node.branch_class;
    const auto& edges = p_.classes[k].edges;
    for (std::size_t idx = next_[k]; idx < edges.size(); ++idx) {
      if (!disjoint(p_.mask(edges[idx]))) continue;
      take(k, idx);
      dfs();
      untake(k, idx);
      if (shared_.stop.load(std::memory_order_relaxed)) return;
    }
    closed_[k] = true;
    dfs();
    closed_[k] = false;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Node {
    std::size_t branch_class = npos;
    std::size_t bound = 0;  // additional edges still attainable
  };

  bool disjoint(const Word* m) const {
    for (std::size_t w = 0; w < p_.words; ++w)
      if (m[w] & used_[w]) return false;
    return true;
  }

  void take(std::size_t k, std::size_t idx) {
    const Word* m = p_.mask(p_.classes[k].edges[idx]);
    for (std::size_t w = 0; w < p_.words; ++w) used_[w] |= m[w];
    saved_next_.push_back(next_[k]);
    next_[k] = idx + 1;
    ++taken_[k];
    chosen_.emplace_back(k, p_.classes[k].edges[idx]);
  }

  void untake(std::size_t k, std::size_t idx) {
    const Word* m = p_.mask(p_.classes[k].edges[idx]);
    for (std::size_t w = 0; w < p_.words; ++w) used_[w] &= ~m[w];
    next_[k] = saved_next_.back();
    saved_next_.pop_back();
    --taken_[k];
    chosen_.pop_back();
  }

  Node evaluate() {
    Node node;
    std::size_t capacity = 0;
    std::size_t fewest = npos;
    std::fill(scratch_.begin(), scratch_.end(), 0);
    for (std::size_t k = 0; k < p_.classes.size(); ++k) {
      if (closed_[k]) continue;
      const auto& cls = p_.classes[k];
      const std::size_t room = cls.colors.size() - taken_[k];
      if (room == 0) continue;
      std::size_t compatible = 0;
      for (std::size_t idx = next_[k]; idx < cls.edges.size(); ++idx) {
        const Word* m = p_.mask(cls.edges[idx]);
        if (!disjoint(m)) continue;
        ++compatible;
        for (std::size_t w = 0; w < p_.words; ++w) scratch_[w] |= m[w];
      }
      if (compatible == 0) continue;
      capacity += std::min(room, compatible);
      if (compatible < fewest) {
        fewest = compatible;
        node.branch_class = k;
      }
    }
    if (node.branch_class == npos) return node;

    std::size_t covered = 0;
    for (Word w : scratch_) covered += static_cast<std::size_t>(std::popcount(w));
    node.bound = std::min(capacity, covered / p_.r);
    if (chosen_.size() + node.bound > shared_.best.load(std::memory_order_relaxed))
      node.bound = std::min(node.bound, p_.r * greedy_disjoint_count());
    return node;
  }

  // Size of a greedy maximal set of pairwise disjoint compatible edges. Any
  // matching among compatible edges has at most r times as many edges.
  std::size_t greedy_disjoint_count() {
    std::fill(scratch_.begin(), scratch_.end(), 0);
    std::size_t count = 0;
    for (std::size_t k = 0; k < p_.classes.size(); ++k) {
      if (closed_[k] || taken_[k] == p_.classes[k].colors.size()) continue;
      const auto& cls = p_.classes[k];
      for (std::size_t idx = next_[k]; idx < cls.edges.size(); ++idx) {
        const Word* m = p_.mask(cls.edges[idx]);
        if (!disjoint(m)) continue;
        bool clash = false;
        for (std::size_t w = 0; w < p_.words && !clash; ++w) clash = (m[w] & scratch_[w]) != 0;
        if (clash) continue;
        for (std::size_t w = 0; w < p_.words; ++w) scratch_[w] |= m[w];
        ++count;
      }
    }
    return count;
  }

  const Problem& p_;
  Shared& shared_;
  std::size_t task_;
  std::vector<std::size_t> taken_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> saved_next_;
  std::vector<bool> closed_;
  std::vector<Word> used_;
  std::vector<Word> scratch_;
  std::vector<std::pair<std::size_t, std::size_t>> chosen_;
};

RainbowMatching witness_to_matching(const Problem& p,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& w) {
  std::vector<std::size_t> used_in_class(p.classes.size(), 0);
  RainbowMatching rm;
  for (auto [k, edge_id] : w) {
    Color c = p.classes[k].colors[used_in_class[k]++];
    rm.assignment.push_back(ColoredEdge{c, p.edge_list[edge_id]});
  }
  rm.normalize();
  return rm;
}

}  // namespace

SolveReport exact_max_rainbow(const Instance& inst, const ExactOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  report.solver = "exact";

  const Problem problem = build_problem(inst);
  Shared shared;
  shared.budget = opts.node_budget;

  std::size_t usable = 0;
  for (const auto& cls : problem.classes) usable += cls.colors.size();
  shared.ceiling = std::min(usable, inst.vertex_count() / problem.r);

  // Greedy seeds the incumbent so pruning starts from a real value.
  SolveReport seed = greedy_rainbow(inst);
  shared.best = seed.size();
  shared.witness_size = seed.size();
  if (seed.size() >= shared.ceiling) shared.stop = true;

  std::optional<RainbowMatching> found;
  if (!shared.stop) {
    if (!opts.parallel) {
      Search search(problem, shared, 0);
      search.dfs();
    } else {
      Search probe(problem, shared, 0);
      auto [k, branches] = probe.root_branches();
      if (k != std::numeric_limits<std::size_t>::max()) {
        unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
        threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(branches.size())));
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
          pool.emplace_back([&, k = k] {
            for (std::size_t b; (b = cursor.fetch_add(1)) < branches.size();) {
              Search s(problem, shared, b + 1);
              s.run_branch(k, branches[b]);
            }
          });
        }
        for (auto& th : pool) th.join();
      }
    }
  }

  if (shared.witness_size > seed.size() && !shared.witness.empty())
    report.matching = witness_to_matching(problem, shared.witness);
  else
    report.matching = seed.matching;

  report.certificate = shared.aborted ? Certificate::Heuristic : Certificate::ExactOptimum;
  report.stats.nodes = shared.nodes.load();
  report.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rainbow
