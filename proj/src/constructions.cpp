#include "rainbow/constructions.hpp"

#include "rainbow/bounds.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

namespace rainbow {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

// Gadget color classes for one copy whose vertices start at `base`.
std::vector<Matching> gadget_classes(int r, Vertex base) {
  const auto ru = static_cast<Vertex>(r);
  const std::size_t classes = std::size_t{1} << (r - 1);
  std::vector<Matching> out(classes);
  for (std::size_t k = 0; k < classes; ++k) {
    // T always holds element 1; bit j of k adds element j + 2.
    std::vector<bool> in_t(ru, false);
    in_t[0] = true;
    for (int j = 0; j + 1 < r; ++j)
      if (k >> j & 1) in_t[static_cast<std::size_t>(j) + 1] = true;
    Edge e, f;
    for (Vertex i = 0; i < ru; ++i) {
      const Vertex a = base + i;
      const Vertex b = base + ru + i;
      e.vertices.push_back(in_t[i] ? a : b);
      f.vertices.push_back(in_t[i] ? b : a);
    }
    std::sort(e.vertices.begin(), e.vertices.end());
    std::sort(f.vertices.begin(), f.vertices.end());
    out[k].edges = {e, f};
    std::sort(out[k].edges.begin(), out[k].edges.end());
  }
  return out;
}

std::vector<int> gadget_partition(int r, std::size_t copies) {
  std::vector<int> part(copies * 2 * static_cast<std::size_t>(r));
  for (std::size_t v = 0; v < part.size(); ++v)
    part[v] = static_cast<int>(v % static_cast<std::size_t>(r));  // a_j and b_j share part j
  return part;
}

}  // namespace

Instance cycle_instance(int n) {
  if (n < 2) throw InvalidParameter("cycle_instance needs n >= 2");
  const auto size = static_cast<Vertex>(2 * n);
  Matching m, m_prime;
  for (Vertex k = 0; k < static_cast<Vertex>(n); ++k) {
    m.edges.push_back(Edge{2 * k, 2 * k + 1});
    Vertex u = 2 * k + 1, v = (2 * k + 2) % size;
    m_prime.edges.push_back(Edge{std::min(u, v), std::max(u, v)});
  }
  Instance inst;
  inst.r = 2;
  inst.matchings.assign(static_cast<std::size_t>(n - 1), m);
  inst.matchings.push_back(m_prime);
  std::vector<int> part(size);
  for (Vertex v = 0; v < size; ++v) part[v] = static_cast<int>(v % 2);
  inst.partition = std::move(part);
  inst.provenance.generator = "cycle";
  inst.provenance.set("n", str(n));
  canonicalize(inst);
  return inst;
}

Instance k4_union_instance(int n) {
  if (n < 3 || n % 2 == 0) throw InvalidParameter("k4_union_instance needs odd n >= 3");
  const auto copies = static_cast<Vertex>((n + 1) / 2);
  Matching red, green, blue;
  for (Vertex c = 0; c < copies; ++c) {
    const Vertex b = 4 * c;
    red.edges.push_back(Edge{b, b + 1});
    red.edges.push_back(Edge{b + 2, b + 3});
    green.edges.push_back(Edge{b, b + 2});
    green.edges.push_back(Edge{b + 1, b + 3});
    blue.edges.push_back(Edge{b, b + 3});
    blue.edges.push_back(Edge{b + 1, b + 2});
  }
  Instance inst;
  inst.r = 2;
  inst.matchings.assign(static_cast<std::size_t>(n - 2), red);
  inst.matchings.push_back(green);
  inst.matchings.push_back(blue);
  inst.provenance.generator = "k4";
  inst.provenance.set("n", str(n));
  canonicalize(inst);
  return inst;
}

Instance ach_gadget(int r) {
  if (r < 2 || r > 20) throw InvalidParameter("ach_gadget needs 2 <= r <= 20");
  Instance inst;
  inst.r = r;
  inst.matchings = gadget_classes(r, 0);
  inst.partition = gadget_partition(r, 1);
  inst.provenance.generator = "ach-gadget";
  inst.provenance.set("r", str(r));
  return inst;
}

Instance ach_instance(int r, int n) {
  if (r < 3 || r > 20) throw InvalidParameter("ach_instance needs 3 <= r <= 20");
  const std::int64_t classes = std::int64_t{1} << (r - 1);
  if (n % 2 != 0) throw InvalidParameter("ach_instance needs n even");
  if (n < classes) throw InvalidParameter("ach_instance needs n >= 2^(r-1)");

  const auto copies = static_cast<std::size_t>(n / 2);
  std::vector<Matching> merged(static_cast<std::size_t>(classes));
  for (std::size_t c = 0; c < copies; ++c) {
    auto cls = gadget_classes(r, static_cast<Vertex>(c * 2 * static_cast<std::size_t>(r)));
    for (std::size_t k = 0; k < cls.size(); ++k)
      for (auto& e : cls[k].edges) merged[k].edges.push_back(std::move(e));
  }

  Instance inst;
  inst.r = r;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(std::min(i, classes - 1));
    inst.matchings.push_back(merged[k]);
  }
  inst.partition = gadget_partition(r, copies);
  inst.provenance.generator = "ach";
  inst.provenance.set("r", str(r));
  inst.provenance.set("n", str(n));
  canonicalize(inst);
  return inst;
}

Instance truncate_matchings(const Instance& inst, std::size_t size) {
  Instance out = inst;
  for (auto& m : out.matchings)
    if (m.edges.size() > size) m.edges.resize(size);
  out.provenance.set("truncate", std::to_string(size));
  return out;
}

BlockingFamily blowup_compose(const std::vector<BlockingFamily>& parts) {
  if (parts.empty()) throw InvalidParameter("blowup_compose needs at least one part");
  const int r = parts.front().inst.r;
  const std::size_t n = parts.front().inst.num_colors();
  for (const auto& p : parts) {
    if (p.inst.r != r) throw InvalidParameter("blowup_compose parts differ in r");
    if (p.inst.num_colors() != n) throw InvalidParameter("blowup_compose parts differ in n");
  }

  BlockingFamily out;
  out.inst.r = r;
  out.inst.matchings.resize(n);
  const bool partite = std::all_of(parts.begin(), parts.end(),
                                   [](const BlockingFamily& p) { return p.inst.partition.has_value(); });
  std::vector<int> partition;
  std::vector<std::size_t> offsets, blocked;
  std::size_t offset = 0, total = 0;

  for (const auto& p : parts) {
    offsets.push_back(offset);
    blocked.push_back(p.blocked_size);
    total += p.blocked_size;
    const std::size_t width = p.inst.vertex_count();
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& e : p.inst.matchings[j].edges) {
        Edge shifted = e;
        for (auto& v : shifted.vertices) v += static_cast<Vertex>(offset);
        out.inst.matchings[j].edges.push_back(std::move(shifted));
      }
    }
    if (partite) {
      partition.resize(offset + width, 0);
      for (std::size_t v = 0; v < p.inst.partition->size(); ++v)
        partition[offset + v] = (*p.inst.partition)[v];
    }
    offset += width;
  }
  if (partite) out.inst.partition = std::move(partition);

  out.blocked_size = total - parts.size() + 1;
  auto& prov = out.inst.provenance;
  prov.generator = "blowup";
  prov.set("q", std::to_string(parts.size()));
  prov.set("blocked", join(blocked));
  prov.set("offsets", join(offsets));
  return out;
}

Instance dummy_lift(const Instance& inst, int m) {
  if (m < 0) throw InvalidParameter("dummy_lift needs m >= 0");
  if (m == 0) return inst;
  Instance out = inst;
  const auto r = static_cast<Vertex>(inst.r);
  const auto base = static_cast<Vertex>(inst.vertex_count());
  std::vector<Edge> dummies;
  for (Vertex k = 0; k < static_cast<Vertex>(m); ++k) {
    Edge e;
    for (Vertex j = 0; j < r; ++j) e.vertices.push_back(base + k * r + j);
    dummies.push_back(std::move(e));
  }
  for (auto& mt : out.matchings) mt.edges.insert(mt.edges.end(), dummies.begin(), dummies.end());
  if (out.partition) {
    out.partition->resize(base, 0);
    for (Vertex k = 0; k < static_cast<Vertex>(m); ++k)
      for (Vertex j = 0; j < r; ++j) out.partition->push_back(static_cast<int>(j));
  }
  out.provenance.generator = "dummy";
  out.provenance.params.clear();
  out.provenance.set("base", inst.provenance.generator);
  for (const auto& [k, v] : inst.provenance.params) out.provenance.set("base." + k, v);
  out.provenance.set("m", str(m));
  canonicalize(out);
  return out;
}

namespace {

struct Candidate {
  // class[i][c]: gadget color class used by matching i on copy c.
  std::vector<std::vector<std::size_t>> cls;
  // order[i]: permutation of the 2k edge slots; the first t are kept.
  std::vector<std::vector<std::size_t>> order;
};

struct BlockingWorker {
  int r, n, t;
  std::size_t copies, classes;
  std::vector<std::vector<Matching>> gadgets;  // per copy
  const BlockingSearchOptions& opts;

  Candidate random_candidate(Rng& rng) const {
    Candidate c;
    c.cls.resize(static_cast<std::size_t>(n));
    c.order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto& row = c.cls[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < copies; ++k) row.push_back(static_cast<std::size_t>(rng.below(classes)));
      auto& ord = c.order[static_cast<std::size_t>(i)];
      ord.resize(2 * copies);
      std::iota(ord.begin(), ord.end(), std::size_t{0});
      rng.shuffle(ord);
    }
    return c;
  }

  void mutate(Candidate& c, Rng& rng) const {
    const auto i = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
    const auto kept = static_cast<std::size_t>(t);
    if (2 * copies > kept && rng.bernoulli(0.5)) {
      auto& ord = c.order[i];
      const auto a = static_cast<std::size_t>(rng.below(kept));
      const auto b = kept + static_cast<std::size_t>(rng.below(ord.size() - kept));
      std::swap(ord[a], ord[b]);
    } else {
      const auto k = static_cast<std::size_t>(rng.below(copies));
      c.cls[i][k] = static_cast<std::size_t>(rng.below(classes));
    }
  }

  Instance realize(const Candidate& c) const {
    Instance inst;
    inst.r = r;
    inst.partition = gadget_partition(r, copies);
    for (int i = 0; i < n; ++i) {
      Matching m;
      const auto& ord = c.order[static_cast<std::size_t>(i)];
      for (std::size_t slot = 0; slot < static_cast<std::size_t>(t); ++slot) {
        const std::size_t copy = ord[slot] / 2;
        const std::size_t side = ord[slot] % 2;
        m.edges.push_back(gadgets[copy][c.cls[static_cast<std::size_t>(i)][copy]].edges[side]);
      }
      inst.matchings.push_back(std::move(m));
    }
    canonicalize(inst);
    return inst;
  }

  // Exact maximum, or nullopt when the solver cannot certify it.
  std::optional<std::size_t> score(const Instance& inst) const {
    ExactOptions eo;
    eo.node_budget = opts.node_budget;
    SolveReport rep = exact_max_rainbow(inst, eo);
    if (rep.certificate != Certificate::ExactOptimum) return std::nullopt;
    return rep.size();
  }

  std::optional<std::pair<Instance, std::uint64_t>> run(std::uint64_t stream_seed,
                                                        std::uint64_t budget) const {
    Rng rng(stream_seed);
    std::uint64_t used = 0;
    while (used < budget) {
      Candidate cur = random_candidate(rng);
      Instance inst = realize(cur);
      auto cur_score = score(inst);
      ++used;
      if (cur_score && *cur_score < static_cast<std::size_t>(t)) return std::make_pair(inst, used);
      for (std::uint64_t step = 0; step < opts.steps_per_restart && used < budget; ++step) {
        Candidate next = cur;
        mutate(next, rng);
        Instance cand = realize(next);
        auto s = score(cand);
        ++used;
        if (!s) continue;
        if (*s < static_cast<std::size_t>(t)) return std::make_pair(cand, used);
        if (!cur_score || *s <= *cur_score) {
          cur = std::move(next);
          cur_score = s;
        }
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<BlockingFamily> find_blocking_family(int r, int n, int t,
                                                   const BlockingSearchOptions& opts) {
  if (t < 1) throw InvalidParameter("find_blocking_family needs t >= 1");
  if (n < 0) throw InvalidParameter("find_blocking_family needs n >= 0");
  if (r < 2 || r > 10) throw InvalidParameter("find_blocking_family needs 2 <= r <= 10");
  // A single edge of any color is already a rainbow matching of size 1.
  if (t == 1 && n >= 1) return std::nullopt;

  BlockingWorker worker{r, n, t, static_cast<std::size_t>((t + 1) / 2),
                        std::size_t{1} << (r - 1), {}, opts};
  for (std::size_t c = 0; c < worker.copies; ++c)
    worker.gadgets.push_back(gadget_classes(r, static_cast<Vertex>(c * 2 * static_cast<std::size_t>(r))));

  const unsigned workers = std::max(1u, opts.workers);
  std::vector<std::optional<std::pair<Instance, std::uint64_t>>> found(workers);
  auto share = [&](unsigned w) {
    return opts.budget / workers + (w < opts.budget % workers ? 1 : 0);
  };
  if (workers == 1) {
    found[0] = worker.run(Rng::derive(opts.seed, 0), share(0));
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { found[w] = worker.run(Rng::derive(opts.seed, w), share(w)); });
    for (auto& th : pool) th.join();
  }

  for (unsigned w = 0; w < workers; ++w) {
    if (!found[w]) continue;
    BlockingFamily fam;
    fam.inst = std::move(found[w]->first);
    fam.blocked_size = static_cast<std::size_t>(t);
    auto& prov = fam.inst.provenance;
    prov.generator = "blocking-search";
    prov.set("r", str(r));
    prov.set("n", str(n));
    prov.set("t", str(t));
    prov.set("budget", std::to_string(opts.budget));
    prov.set("workers", std::to_string(workers));
    prov.set("worker", std::to_string(w));
    prov.set("evaluations", std::to_string(found[w]->second));
    prov.seed = opts.seed;
    return fam;
  }
  return std::nullopt;
}

PszParams psz_composition_params(int r, std::int64_t n) {
  if (r < 3) throw InvalidParameter("psz_composition_params needs r >= 3");
  const auto ru = static_cast<unsigned>(r);
  if (Integer(n) <= ipow(Integer(6), ru))
    throw InvalidParameter("psz_composition_params needs n > 6^r (out of domain)");

  PszParams p;
  p.n = n;
  // Largest a with a^r < n; then n <= (a+1)^r.
  p.a = floor_root(Integer(n - 1), ru).convert_to<std::int64_t>();
  p.t = 3 * (p.a + 1) * r;
  p.q = n / p.t;
  p.s = n - p.q * p.t;
  p.t_prime = p.s + p.t;
  p.bound = n - p.q;
  // q >= n^{(r-1)/r} / (12 r)  <=>  (12 r q)^r >= n^{r-1}
  p.q_bound_holds = ipow(Integer(12) * r * p.q, ru) >= ipow(Integer(n), ru - 1);
  return p;
}

Instance random_instance(int r, int n, int s, std::uint64_t seed) {
  if (r < 2) throw InvalidParameter("random_instance needs r >= 2");
  if (n < 0) throw InvalidParameter("random_instance needs n >= 0");
  if (s < 1) throw InvalidParameter("random_instance needs s >= 1");
  const auto ru = static_cast<std::size_t>(r);
  const auto su = static_cast<std::size_t>(s);
  const std::size_t pool = ru * su + ru;

  Rng rng(seed);
  Instance inst;
  inst.r = r;
  std::vector<Vertex> vertices(pool);
  for (int i = 0; i < n; ++i) {
    std::iota(vertices.begin(), vertices.end(), Vertex{0});
    rng.shuffle(vertices);
    Matching m;
    for (std::size_t k = 0; k < su; ++k) {
      Edge e(std::vector<Vertex>(vertices.begin() + static_cast<long>(k * ru),
                                 vertices.begin() + static_cast<long>((k + 1) * ru)));
      std::sort(e.vertices.begin(), e.vertices.end());
      m.edges.push_back(std::move(e));
    }
    inst.matchings.push_back(std::move(m));
  }
  inst.provenance.generator = "random";
  inst.provenance.set("r", str(r));
  inst.provenance.set("n", str(n));
  inst.provenance.set("s", str(s));
  inst.provenance.seed = seed;
  canonicalize(inst);
  return inst;
}

}  // namespace rainbow
