#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carpetlab/constructions.hpp"
#include "carpetlab/predicates.hpp"
#include "carpetlab/space.hpp"

namespace carpetlab {

struct ComponentSpace {
  std::vector<std::string> names;               // registry marked-set name, or "chain<i>"
  std::vector<std::vector<VertexId>> members;   // sorted vertex ids
  std::vector<int> registry_id;                 // marked component id, -1 if none
  std::vector<std::vector<double>> hausdorff;   // filled on request
  std::vector<std::pair<int, int>> relations;   // accumulation: source -> limit
  bool registry_match = true;
  std::string detail;

  std::size_t size() const { return names.size(); }
  int index_of(const std::string& name) const;
};

/// Partitions the boundary vertices into epsilon-chain classes, with
/// epsilon = eps_factor * local pitch, and cross-checks the marked registry.
ComponentSpace boundary_components(const DiscreteSpace& space, double eps_factor = 3.0,
                                   bool with_hausdorff = false);

/// Adds named accumulation relations; unknown names are an input error.
void declare_relations(ComponentSpace& cs, const std::vector<std::pair<std::string, std::string>>& relations);

/// Components of a slit-domain mesh with its declared accumulation structure.
ComponentSpace component_space(const SlitDomainMesh& mesh);

/// Number of isolated-point removal rounds on the declared structure.
int rank(const ComponentSpace& cs);

/// Declared structure only: `leaves` sources per limit, `limits` limits of the
/// first level, all accumulating onto one top component.
ComponentSpace synthetic_chain(int limits, int leaves);

struct EndLevel {
  double width = 0.0;                          // collar width
  std::vector<std::vector<VertexId>> parts;    // complement components meeting the fringe
  std::vector<int> parent;                     // index in the previous level
};

struct EndProfile {
  VertexId basepoint = 0;
  std::vector<EndLevel> levels;  // compacta increase along the list
  bool nesting_ok = true;
  bool stabilized = false;
  int end_count = 0;
};

/// Ends through the exhaustion K_j = {x : dist(x, fringe) >= w_j}, w_j
/// decreasing. Widths default to s/3, s/4, s/6, s/8, s/12 with
/// s = dist(basepoint, fringe), dropping those below two mesh pitches.
EndProfile ends(const DiscreteSpace& space, VertexId basepoint, std::vector<double> widths = {});

/// The interior vertex farthest from the fringe (smallest id on ties).
VertexId deepest_vertex(const DiscreteSpace& space);

struct EndsComponentsReport {
  bool pass = false;
  int ends = 0;
  int components = 0;
  std::string detail;
};
EndsComponentsReport ends_components_check(const DiscreteSpace& space);

struct CircleReport {
  bool is_cycle = false;
  std::size_t vertices = 0;
  ConstantReport llc1;
  ConstantReport three_point;
  std::string detail;
};

/// Checks that the component's induced adjacency is one cycle and reports
/// LLC_1 of the cycle and the three-point constant.
CircleReport boundary_circle_check(const DiscreteSpace& space, const MarkedSet& component,
                                   std::optional<MetricKind> metric = std::nullopt, const SampleSpec& spec = {});

}  // namespace carpetlab
