#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carpetlab/constructions.hpp"
#include "carpetlab/space.hpp"

namespace carpetlab {

struct SampleSpec {
  std::uint64_t seed = 1;
  int samples = 50;
  int pairs = 0;          // point pairs per sample; 0 joins the whole target set
  double r_min = 0.02;
  double r_max = 0.5;
  bool relative = true;   // radii in units of the space diameter
  double grid_ratio = 1.05;
  double cap = 1e3;
  double slack = 1.2;
  int radii = 9;          // radius grid size for regression fits
};

struct ConstantReport {
  std::string name;
  double value = 0.0;
  bool infinite = false;  // relative-distance convention; vacuous for separation
  bool capped = false;    // search reached the cap: reported as "fail"
  int samples = 0;
  int skipped = 0;
  std::uint64_t seed = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  double slack = 1.2;
  std::string paper_ref;
  std::map<std::string, double> extra;
  std::vector<std::pair<double, double>> series;  // (r, value) for plots

  std::string value_str() const;
};

ConstantReport llc1_constant(const DiscreteSpace& space, const SampleSpec& spec);
ConstantReport llc2_constant(const DiscreteSpace& space, const SampleSpec& spec);
/// Annular constant for R = 2r. extra["continuum_diameter_over_r"] bounds the
/// diameter of the joining continuum (it lies in a ball of radius 2 Lambda r).
ConstantReport allc_constant(const DiscreteSpace& space, const SampleSpec& spec);

/// Per-sample LLC-style check: every pair of `targets` lies in one component
/// of the region at parameter lambda (used for the ALLC-implies-LLC property).
bool llc_holds(const DiscreteSpace& space, VertexId center, double r, double lambda, bool first_clause);

/// Log-log fit of the measure proxy against r over absolute radii [r_min, r_max].
/// The slope fits the largest ball measure over the sampled centers.
ConstantReport ahlfors_fit(const DiscreteSpace& space, double Q, const SampleSpec& spec);

/// n_k for k = 0..kmax: components meeting B(x,r) with 2^-k r < diam <= 2^-k+1 r.
std::vector<int> homogeneity_counts(const std::vector<double>& diams, const std::vector<char>& meets,
                                    double r, int kmax);
std::vector<int> homogeneity_counts(const DiscreteSpace& space, const std::vector<std::vector<VertexId>>& comps,
                                    VertexId x, double r, int kmax);
/// Registry-only counts for slit domains: Euclidean ball, slit diameter = length.
std::vector<int> registry_homogeneity_counts(const std::vector<Slit>& slits, bool include_outer, Point x,
                                             double r, int kmax);
std::vector<double> planarity_sums(const std::vector<int>& counts, double Q);

ConstantReport porosity_constant(const DiscreteSpace& space, std::span<const VertexId> z, const SampleSpec& spec);

/// Three-point constant; `metric` overrides the space metric for the circle points.
ConstantReport quasicircle_constant(const DiscreteSpace& space, const MarkedSet& circle,
                                    std::optional<MetricKind> metric = std::nullopt);

ConstantReport uniform_rel_sep(const DiscreteSpace& space, const std::vector<std::vector<VertexId>>& comps,
                               int threads = 0);

/// Box-counting slope of the projected set over box sides 2^-j, j in [jmin, jmax].
double box_count_slope(const DiscreteSpace& space, std::span<const VertexId> ids, int jmin, int jmax);

/// Smallest grid value ratio^k (k >= 0) that is > t (strict) or >= t.
double grid_value(double t, double ratio, double cap, bool strict, bool* capped = nullptr);

/// Marked sets of the given kinds as vertex lists, in name order.
std::vector<std::vector<VertexId>> marked_components(const DiscreteSpace& space,
                                                     std::initializer_list<MarkedKind> kinds);

}  // namespace carpetlab
