#include "rainbow/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rainbow {

bool Edge::intersects(const Edge& other) const {
  // Both vertex lists are sorted; a merge walk avoids allocation.
  auto a = vertices.begin();
  auto b = other.vertices.begin();
  while (a != vertices.end() && b != other.vertices.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

bool Edge::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

void Provenance::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = value;
      return;
    }
  }
  params.emplace_back(key, value);
}

std::optional<std::string> Provenance::get(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return std::nullopt;
}

std::size_t Instance::vertex_count() const {
  std::size_t count = partition ? partition->size() : 0;
  for (const auto& m : matchings)
    for (const auto& e : m.edges)
      for (Vertex v : e.vertices) count = std::max<std::size_t>(count, std::size_t{v} + 1);
  return count;
}

std::size_t Instance::min_matching_size() const {
  if (matchings.empty()) return 0;
  std::size_t best = matchings.front().size();
  for (const auto& m : matchings) best = std::min(best, m.size());
  return best;
}

std::size_t Instance::max_matching_size() const {
  std::size_t best = 0;
  for (const auto& m : matchings) best = std::max(best, m.size());
  return best;
}

std::vector<Color> RainbowMatching::colors() const {
  std::vector<Color> out;
  out.reserve(assignment.size());
  for (const auto& ce : assignment) out.push_back(ce.color);
  return out;
}

void RainbowMatching::normalize() {
  std::sort(assignment.begin(), assignment.end(),
            [](const ColoredEdge& a, const ColoredEdge& b) {
              return a.color != b.color ? a.color < b.color : a.edge < b.edge;
            });
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::BadUniformity: return "bad-uniformity";
    case ViolationKind::EdgeSize: return "edge-size";
    case ViolationKind::EdgeNotIncreasing: return "edge-not-increasing";
    case ViolationKind::IntraMatchingIntersection: return "intra-matching-intersection";
    case ViolationKind::PartitionMissingVertex: return "partition-missing-vertex";
    case ViolationKind::PartitionPartOutOfRange: return "partition-part-out-of-range";
    case ViolationKind::PartitionEdgeNotTransversal: return "partition-edge-not-transversal";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << to_string(v.kind);
    if (v.matching) out << " matching " << *v.matching;
    if (v.edge) out << " edge " << *v.edge;
    out << ": " << v.message << '\n';
  }
  return out.str();
}

std::string to_string(const Edge& e) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < e.vertices.size(); ++i) out << (i ? "," : "") << e.vertices[i];
  out << '}';
  return out.str();
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::optional<std::size_t> mi,
                       std::optional<std::size_t> ei, std::string msg) {
    report.violations.push_back(Violation{kind, mi, ei, std::move(msg)});
  };

  if (inst.r < 2) add(ViolationKind::BadUniformity, {}, {}, "r must be at least 2");
  const auto r = static_cast<std::size_t>(std::max(inst.r, 0));

  if (inst.partition) {
    for (std::size_t v = 0; v < inst.partition->size(); ++v) {
      int part = (*inst.partition)[v];
      if (part < 0 || part >= inst.r)
        add(ViolationKind::PartitionPartOutOfRange, {}, {},
            "vertex " + std::to_string(v) + " has part " + std::to_string(part));
    }
  }

  for (std::size_t mi = 0; mi < inst.matchings.size(); ++mi) {
    const auto& edges = inst.matchings[mi].edges;
    std::unordered_map<Vertex, std::size_t> owner;
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
      const auto& vs = edges[ei].vertices;
      if (vs.size() != r)
        add(ViolationKind::EdgeSize, mi, ei,
            "expected " + std::to_string(r) + " vertices, got " + std::to_string(vs.size()));
      if (!std::is_sorted(vs.begin(), vs.end()) ||
          std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        add(ViolationKind::EdgeNotIncreasing, mi, ei,
            "vertex list " + to_string(edges[ei]) + " is not strictly increasing");

      std::set<Vertex> distinct(vs.begin(), vs.end());
      for (Vertex v : distinct) {
        auto [it, fresh] = owner.emplace(v, ei);
        if (!fresh)
          add(ViolationKind::IntraMatchingIntersection, mi, ei,
              "shares vertex " + std::to_string(v) + " with edge " + std::to_string(it->second));
      }

      if (inst.partition) {
        const auto& part = *inst.partition;
        std::vector<int> hits(r, 0);
        bool complete = true;
        for (Vertex v : vs) {
          if (v >= part.size()) {
            add(ViolationKind::PartitionMissingVertex, mi, ei,
                "vertex " + std::to_string(v) + " has no part");
            complete = false;
            continue;
          }
          int p = part[v];
          if (p >= 0 && static_cast<std::size_t>(p) < r) ++hits[static_cast<std::size_t>(p)];
        }
        if (complete && std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
          add(ViolationKind::PartitionEdgeNotTransversal, mi, ei,
              "edge " + to_string(edges[ei]) + " does not meet every part exactly once");
      }
    }
  }
  return report;
}

bool is_rainbow_matching(const Instance& inst, const RainbowMatching& rm) {
  for (const auto& ce : rm.assignment)
    if (ce.color >= inst.num_colors())
      throw InvalidParameter("color index " + std::to_string(ce.color) + " out of range [0, " +
                             std::to_string(inst.num_colors()) + ")");

  std::set<Color> seen;
  std::set<Vertex> covered;
  for (const auto& ce : rm.assignment) {
    if (!seen.insert(ce.color).second) return false;
    const auto& edges = inst.matchings[ce.color].edges;
    if (std::find(edges.begin(), edges.end(), ce.edge) == edges.end()) return false;
    for (Vertex v : ce.edge.vertices)
      if (!covered.insert(v).second) return false;
  }
  return true;
}

void canonicalize(Instance& inst) {
  for (auto& m : inst.matchings) {
    for (auto& e : m.edges) std::sort(e.vertices.begin(), e.vertices.end());
    std::sort(m.edges.begin(), m.edges.end());
  }
}

}  // namespace rainbow
