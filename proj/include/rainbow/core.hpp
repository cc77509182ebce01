#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using Vertex = std::uint32_t;
using Color = std::size_t;

// Thrown when a caller passes parameters outside an operation's domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an operation's input fails a precondition that is checked
// rather than assumed (e.g. a non-maximal matching handed to good_edges).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An r-uniform edge. Vertices are kept strictly increasing.
struct Edge {
  std::vector<Vertex> vertices;

  Edge() = default;
  explicit Edge(std::vector<Vertex> v) : vertices(std::move(v)) {}
  Edge(std::initializer_list<Vertex> v) : vertices(v) {}

  std::size_t size() const { return vertices.size(); }
  bool intersects(const Edge& other) const;
  bool contains(Vertex v) const;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Matching {
  std::vector<Edge> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }

  friend bool operator==(const Matching&, const Matching&) = default;
};

// Where an instance came from: generator name, ordered parameters, seed.
struct Provenance {
  std::string generator = "manual";
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::uint64_t> seed;

  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// A family of n matchings; matching i carries color i. Instances are plain
// values and are never mutated by library code after construction.
struct Instance {
  int r = 2;
  std::vector<Matching> matchings;
  // part index in [0, r) per vertex id, when the instance is r-partite.
  std::optional<std::vector<int>> partition;
  Provenance provenance;

  std::size_t num_colors() const { return matchings.size(); }
  // One past the largest vertex id referenced by an edge or the partition.
  std::size_t vertex_count() const;
  std::size_t min_matching_size() const;
  std::size_t max_matching_size() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct ColoredEdge {
  Color color = 0;
  Edge edge;

  friend bool operator==(const ColoredEdge&, const ColoredEdge&) = default;
};

// A matching together with its injective color assignment.
struct RainbowMatching {
  std::vector<ColoredEdge> assignment;

  std::size_t size() const { return assignment.size(); }
  bool empty() const { return assignment.empty(); }
  std::vector<Color> colors() const;
  // Sorts the assignment by color; handy for comparing witnesses.
  void normalize();

  friend bool operator==(const RainbowMatching&, const RainbowMatching&) = default;
};

enum class ViolationKind {
  BadUniformity,
  EdgeSize,
  EdgeNotIncreasing,
  IntraMatchingIntersection,
  PartitionMissingVertex,
  PartitionPartOutOfRange,
  PartitionEdgeNotTransversal,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> matching;
  std::optional<std::size_t> edge;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_instance(const Instance& inst);

// Throws InvalidParameter when a color index is >= num_colors().
bool is_rainbow_matching(const Instance& inst, const RainbowMatching& rm);

// Sorts every matching's edges lexicographically; matching order is kept.
void canonicalize(Instance& inst);

std::string to_string(const Edge& e);

}  // namespace rainbow
