#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "carpetlab/constructions.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/space.hpp"

namespace carpetlab {

/// Vertex bijection E_i -> f_i(E_i), listed as (base id, patch id) pairs.
struct GluingMap {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  double L = 1.0;  // declared; glue() re-verifies it on every pair
};

struct Patch {
  DiscreteSpace space;
  GluingMap map;
};

struct GluingInstance {
  DiscreteSpace base;
  std::vector<Patch> patches;
  double C = kInf;  // flatness: diam X_i <= C diam f_i(E_i)
  double c = 0.0;   // relative separation of the E_i
  double Q = 2.0;
  double M = kInf;  // bound on sum n_k 2^-kQ
};

struct GluedSpace {
  DiscreteSpace space;
  std::vector<int> patch_of;          // -1 for base vertices
  std::vector<VertexId> original;     // id inside its own component
  std::vector<std::size_t> offsets;   // first union id of each component, base first; back() = size
  std::vector<std::array<VertexId, 2>> identifications;  // (base, patch) union ids
  std::vector<double> L;              // verified constant per patch
  double declared_L = 1.0;            // common constant of the comparison inequality
  double C = kInf;
  double c = 0.0;
  double Q = 2.0;
  double M = kInf;

  std::size_t components() const { return offsets.size() - 1; }
  int component_of(VertexId v) const { return patch_of[v] + 1; }
  VertexId union_id(int component, VertexId id) const {
    return static_cast<VertexId>(offsets.at(component) + id);
  }
};

/// Exhaustive bi-Lipschitz constant of a map between two spaces; throws on
/// non-bijective maps or disconnected sets.
double verify_bilipschitz(const DiscreteSpace& base, const DiscreteSpace& patch, const GluingMap& map);

GluedSpace glue(const GluingInstance& instance);

/// Distances from `source` inside its own component only (the auxiliary d~).
std::vector<double> component_distances(const GluedSpace& glued, VertexId source, double cutoff = kInf);

struct ComparisonReport {
  bool pass = true;
  std::size_t pairs = 0;
  double min_ratio = kInf;  // d / d~
  double max_ratio = 0.0;
  double L = 1.0;
  std::array<VertexId, 2> witness{0, 0};
  std::string detail;
};

/// d~/L - tol <= d <= d~ + tol for all pairs in one component. `sources` = 0
/// scans every vertex; otherwise that many seeded sources.
ComparisonReport comparison_check(const GluedSpace& glued, std::size_t sources = 0, std::uint64_t seed = 1,
                                  double tol = 1e-9);

struct IsometryReport {
  bool pass = true;
  std::size_t centers = 0;
  std::size_t skipped = 0;  // vertices closer than 3r to an identification
  std::size_t pairs = 0;
  std::array<VertexId, 3> witness{0, 0, 0};
  std::string detail;
};

/// Exact check that d = d~ on B_d(a, r) whenever dist(a, identifications) >= 3r.
IsometryReport local_isometry_check(const GluedSpace& glued, double r, std::size_t max_centers = 0,
                                    std::uint64_t seed = 1);

/// Glued distance by explicit admissible sequences: within-component
/// Floyd-Warshall legs chained through identification classes, at most
/// `max_legs` legs. Test oracle for small instances.
std::vector<std::vector<double>> admissible_distances(const GluedSpace& glued, int max_legs);

struct FlatnessReport {
  double C = 0.0;                // minimal feasible constant
  std::vector<double> per_patch;
};
FlatnessReport flatness_check(const GluingInstance& instance);

/// Hemisphere polar grid whose rim has the given arclength positions (cyclic,
/// total length `perimeter`); rim vertices are 0..rim.size()-1.
DiscreteSpace hemisphere_patch(const std::vector<double>& rim, double perimeter, double pitch,
                               Point center = {});

/// Glues a round hemisphere of matching circumference along every slit circle.
GluedSpace fill_slits(const SlitDomainMesh& mesh);
GluingInstance fill_slits_instance(const SlitDomainMesh& mesh);

/// Coarse L = 2 example: two 9x9 unit-square grids glued along their bottom
/// edges, the patch columns stretched by 2 on the first quarter.
GluingInstance two_squares_instance();

/// Small random instance with integer edge weights (exact arithmetic).
GluingInstance random_instance(std::uint64_t seed, int max_vertices = 200, int max_patches = 3);

/// Condition (C) data from the slit registry: sup over sampled centers and
/// radii of the n_k, summed with weights 2^-kQ.
double registry_condition_c(const std::vector<Slit>& slits, double Q, int kmax = 12);

}  // namespace carpetlab
