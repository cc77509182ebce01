#include "rainbow/setpairs.hpp"

#include "rainbow/solvers.hpp"

#include <algorithm>

namespace rainbow {

namespace {

IntSet normalized(IntSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool meets(const IntSet& a, const IntSet& b) {
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x == *y) return true;
    if (*x < *y)
      ++x;
    else
      ++y;
  }
  return false;
}

IntSet as_set(const Edge& e) { return IntSet(e.vertices.begin(), e.vertices.end()); }

}  // namespace

SetPairSystem SetPairSystem::from(std::vector<std::pair<IntSet, IntSet>> raw) {
  SetPairSystem sys;
  for (auto& [a, b] : raw) sys.pairs.push_back(SetPair{normalized(std::move(a)), normalized(std::move(b))});
  return sys;
}

CrossCheck is_cross_intersecting(const SetPairSystem& sys) {
  if (sys.size() < 2) throw InvalidParameter("cross-intersecting systems need at least two pairs");
  CrossCheck out;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < sys.size(); ++j) {
      const bool hit = meets(sys.pairs[i].a, sys.pairs[j].b);
      if ((i == j) == hit) {
        out.violation = std::make_pair(i, j);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

Rational bollobas_sum(const SetPairSystem& sys) {
  Rational sum = 0;
  for (const auto& p : sys.pairs) {
    const auto a = static_cast<unsigned>(p.a.size());
    const auto b = static_cast<unsigned>(p.b.size());
    sum += Rational(Integer(1), binomial(a + b, a));
  }
  return sum;
}

SetPairSystem extract_setpairs(const GoodEdgeTable& table, std::size_t edge_pos) {
  if (edge_pos >= table.matching.size())
    throw InvalidParameter("edge position outside the rainbow matching");
  const auto good = table.good_colors_of(edge_pos);

  // Disjoint witnesses of two distinct colors would be a growing swap.
  for (std::size_t i = 0; i < good.size(); ++i) {
    for (std::size_t j = i + 1; j < good.size(); ++j) {
      const GoodWitness& wi = *good[i].second;
      const GoodWitness& wj = *good[j].second;
      for (const Edge* f : {&wi.first, &wi.second})
        for (const Edge* g : {&wj.first, &wj.second})
          if (!f->intersects(*g))
            throw PreconditionViolation(
                "matching is not swap-maximal: replace " +
                to_string(table.matching.assignment[edge_pos].edge) + " by color " +
                std::to_string(good[i].first) + " edge " + to_string(*f) + " and color " +
                std::to_string(good[j].first) + " edge " + to_string(*g));
    }
  }

  const std::size_t l = good.size();
  SetPairSystem sys;
  sys.pairs.resize(2 * l);
  for (std::size_t i = 0; i < l; ++i) {
    const GoodWitness& w = *good[i].second;
    sys.pairs[i] = SetPair{as_set(w.first), as_set(w.second)};
    sys.pairs[l + i] = SetPair{as_set(w.second), as_set(w.first)};
  }
  return sys;
}

SetPairSystem extract_setpairs(const Instance& inst, const RainbowMatching& rm,
                               std::size_t edge_pos) {
  return extract_setpairs(good_edges(inst, rm), edge_pos);
}

}  // namespace rainbow
