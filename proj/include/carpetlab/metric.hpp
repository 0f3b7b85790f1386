#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "carpetlab/space.hpp"

namespace carpetlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Seed {
  VertexId v;
  double d;
};

struct DijkstraLimits {
  double cutoff = kInf;                         // vertices farther than this stay at kInf
  const std::vector<char>* allowed = nullptr;   // relax only into allowed vertices
  const std::vector<char>* targets = nullptr;   // optional early stop set
  bool stop_at_first_target = false;            // else stop once every target settled
};

/// Graph Dijkstra (binary heap) from weighted seeds. Ignores the metric kind.
std::vector<double> dijkstra(const DiscreteSpace& space, std::span<const Seed> seeds,
                             const DijkstraLimits& limits = {});

/// Distance field in the space's own metric (graph or Euclidean restriction).
std::vector<double> distances_from(const DiscreteSpace& space, VertexId source, double cutoff = kInf);
std::vector<double> distances_from_set(const DiscreteSpace& space, std::span<const VertexId> sources,
                                       double cutoff = kInf);

double shortest_dist(const DiscreteSpace& space, VertexId u, VertexId v);
double eccentricity(const DiscreteSpace& space, VertexId v);

std::vector<VertexId> ball(const DiscreteSpace& space, VertexId center, double r);
std::vector<VertexId> closed_ball(const DiscreteSpace& space, VertexId center, double r);
std::vector<VertexId> annulus(const DiscreteSpace& space, VertexId center, double r, double R);

/// Relative distance; `infinite` carries the convention for degenerate sets.
struct RelDistance {
  double value = 0.0;
  bool infinite = false;
  std::string str() const;
};

double set_dist(const DiscreteSpace& space, std::span<const VertexId> a, std::span<const VertexId> b);
RelDistance rel_distance(const DiscreteSpace& space, std::span<const VertexId> a,
                         std::span<const VertexId> b);
RelDistance rel_distance(double dist, double diam_a, double diam_b);
double hausdorff_dist(const DiscreteSpace& space, std::span<const VertexId> a,
                      std::span<const VertexId> b);

/// Exact diameter via eccentricity bounding; only a handful of searches on meshes.
double diameter(const DiscreteSpace& space);
double diameter(const DiscreteSpace& space, std::span<const VertexId> ids);

/// Greedy net in vertex-id order: covering radius < eps, points pairwise >= eps apart.
MarkedSet epsilon_net(const DiscreteSpace& space, double eps);

/// Connected components of the induced subgraph on `ids`; parts sorted by smallest id.
std::vector<std::vector<VertexId>> restricted_components(const DiscreteSpace& space,
                                                         std::span<const VertexId> ids);
/// Component label per vertex of the induced subgraph on `mask` (-1 outside).
std::vector<int> component_labels(const DiscreteSpace& space, const std::vector<char>& mask,
                                  int* count = nullptr);

bool epsilon_chain_connected(const DiscreteSpace& space, std::span<const VertexId> ids, double eps);

double euclid(const Point& a, const Point& b);
std::vector<char> make_mask(std::size_t n, std::span<const VertexId> ids);

}  // namespace carpetlab
