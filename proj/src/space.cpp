#include "carpetlab/space.hpp"

#include <cmath>
#include <numeric>

namespace carpetlab {

const MarkedSet& DiscreteSpace::marked(const std::string& name) const {
  auto it = marked_.find(name);
  if (it == marked_.end()) throw InputError("unknown marked set: " + name);
  return it->second;
}

void DiscreteSpace::check_vertex(VertexId v) const {
  if (v >= vertices_.size()) {
    throw InputError("unknown vertex id " + std::to_string(v));
  }
}

std::vector<bool> DiscreteSpace::boundary_mask() const {
  std::vector<bool> mask(vertices_.size(), false);
  for (const auto& [_, set] : marked_) {
    if (set.kind != MarkedKind::boundary_component && set.kind != MarkedKind::slit) continue;
    for (VertexId v : set.ids) mask[v] = true;
  }
  return mask;
}

VertexId SpaceBuilder::add_vertex(Point pos, Side side, double pitch, double mass) {
  vertices_.push_back({pos, side, pitch, mass});
  return static_cast<VertexId>(vertices_.size() - 1);
}

void SpaceBuilder::add_edge(VertexId u, VertexId v, double length) {
  if (!std::isfinite(length) || length < 0.0) {
    throw InputError("edge length must be finite and nonnegative");
  }
  if (u == v) throw InputError("self loops are not allowed");
  edges_.push_back({u, v, length});
}

void SpaceBuilder::add_marked(MarkedSet set) {
  std::string name = set.name;
  marked_[name] = std::move(set);
}

namespace {

struct DisjointSets {
  std::vector<VertexId> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

DiscreteSpace SpaceBuilder::build() && {
  const std::size_t n = vertices_.size();
  if (n == 0) throw InputError("space has no vertices");

  DisjointSets sets(n);
  std::size_t components = n;
  for (const Edge& e : edges_) {
    if (e.u >= n || e.v >= n) throw InputError("edge references unknown vertex");
    if (sets.unite(e.u, e.v)) --components;
  }
  if (components != 1) {
    throw InputError("space is not connected (" + std::to_string(components) + " components)");
  }
  for (const auto& [name, set] : marked_) {
    if (set.ids.empty()) throw InputError("marked set '" + name + "' is empty");
    for (VertexId v : set.ids) {
      if (v >= n) throw InputError("marked set '" + name + "' references unknown vertex");
    }
  }

  DiscreteSpace space;
  space.offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++space.offsets_[e.u + 1];
    ++space.offsets_[e.v + 1];
  }
  std::partial_sum(space.offsets_.begin(), space.offsets_.end(), space.offsets_.begin());
  space.adjacency_.resize(space.offsets_.back());
  std::vector<std::size_t> cursor(space.offsets_.begin(), space.offsets_.end() - 1);
  for (const Edge& e : edges_) {
    space.adjacency_[cursor[e.u]++] = {e.v, e.length};
    space.adjacency_[cursor[e.v]++] = {e.u, e.length};
  }

  space.vertices_ = std::move(vertices_);
  space.edges_ = std::move(edges_);
  space.marked_ = std::move(marked_);
  space.h_ = h_;
  space.label_ = std::move(label_);
  space.metric_ = metric_;
  space.planar_ = planar_;
  return space;
}

std::string to_string(Side side) {
  switch (side) {
    case Side::left: return "left";
    case Side::right: return "right";
    default: return "none";
  }
}

std::string to_string(MarkedKind kind) {
  switch (kind) {
    case MarkedKind::boundary_component: return "boundary-component";
    case MarkedKind::slit: return "slit";
    case MarkedKind::gluing_locus: return "gluing-locus";
    default: return "generic";
  }
}

std::string to_string(MetricKind kind) {
  return kind == MetricKind::euclidean ? "euclidean" : "path";
}

Side side_from_string(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  if (s == "none" || s.empty()) return Side::none;
  throw InputError("unknown side: " + s);
}

MarkedKind marked_kind_from_string(const std::string& s) {
  if (s == "boundary-component") return MarkedKind::boundary_component;
  if (s == "slit") return MarkedKind::slit;
  if (s == "gluing-locus") return MarkedKind::gluing_locus;
  if (s == "generic") return MarkedKind::generic;
  throw InputError("unknown marked-set kind: " + s);
}

MetricKind metric_kind_from_string(const std::string& s) {
  if (s == "path") return MetricKind::path;
  if (s == "euclidean") return MetricKind::euclidean;
  throw InputError("unknown metric kind: " + s);
}

}  // namespace carpetlab
