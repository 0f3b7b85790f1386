#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace carpetlab {

using VertexId = std::uint32_t;

/// Raised for malformed inputs: unknown ids, empty sets, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a requested mesh resolution cannot resolve the construction.
class ResolutionError : public InputError {
 public:
  using InputError::InputError;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Doubled slit vertices carry the side of the slit they sit on.
enum class Side : std::uint8_t { none, left, right };

/// How distances are measured. `path` is the graph shortest-path metric;
/// `euclidean` restricts the planar metric to the vertex set and uses edges
/// only for connectivity (circle domains are metrized this way).
enum class MetricKind : std::uint8_t { path, euclidean };

enum class MarkedKind : std::uint8_t { boundary_component, slit, gluing_locus, generic };

struct Vertex {
  Point pos;
  Side side = Side::none;
  double pitch = 0.0;  // local mesh spacing
  double mass = 0.0;   // area proxy; zero on boundary vertices
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double length = 0.0;
};

struct MarkedSet {
  std::string name;
  std::vector<VertexId> ids;  // in cyclic order when `cyclic` is set
  MarkedKind kind = MarkedKind::generic;
  int component = -1;
  bool cyclic = false;
};

struct Neighbor {
  VertexId to;
  double length;
};

class SpaceBuilder;

/// Finite weighted graph with planar coordinates. Immutable once built.
class DiscreteSpace {
 public:
  DiscreteSpace() = default;

  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Neighbor> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  const std::map<std::string, MarkedSet>& marked() const { return marked_; }
  const MarkedSet& marked(const std::string& name) const;
  bool has_marked(const std::string& name) const { return marked_.count(name) != 0; }

  double h() const { return h_; }
  const std::string& label() const { return label_; }
  MetricKind metric() const { return metric_; }
  bool planar() const { return planar_; }

  void check_vertex(VertexId v) const;

  /// Vertices belonging to a boundary-component or slit marked set.
  std::vector<bool> boundary_mask() const;

 private:
  friend class SpaceBuilder;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::map<std::string, MarkedSet> marked_;
  double h_ = 0.0;
  std::string label_;
  MetricKind metric_ = MetricKind::path;
  bool planar_ = true;
};

class SpaceBuilder {
 public:
  VertexId add_vertex(Point pos, Side side = Side::none, double pitch = 0.0, double mass = 0.0);
  void add_edge(VertexId u, VertexId v, double length);
  void add_marked(MarkedSet set);

  SpaceBuilder& h(double value) { h_ = value; return *this; }
  SpaceBuilder& label(std::string value) { label_ = std::move(value); return *this; }
  SpaceBuilder& metric(MetricKind value) { metric_ = value; return *this; }
  SpaceBuilder& planar(bool value) { planar_ = value; return *this; }

  std::size_t vertex_count() const { return vertices_.size(); }
  Vertex& vertex(VertexId v) { return vertices_.at(v); }

  /// Validates the invariants (finite nonnegative edges, connectivity,
  /// marked ids in range, nonempty marked sets) and freezes the space.
  DiscreteSpace build() &&;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, MarkedSet> marked_;
  double h_ = 0.0;
  std::string label_;
  MetricKind metric_ = MetricKind::path;
  bool planar_ = true;
};

std::string to_string(Side side);
std::string to_string(MarkedKind kind);
std::string to_string(MetricKind kind);
Side side_from_string(const std::string& s);
MarkedKind marked_kind_from_string(const std::string& s);
MetricKind metric_kind_from_string(const std::string& s);

}  // namespace carpetlab
