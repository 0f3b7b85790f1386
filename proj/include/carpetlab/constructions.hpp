#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carpetlab/space.hpp"

namespace carpetlab {

/// Vertical slit {x} x [y0, y1] in unit-square coordinates.
struct Slit {
  int id = 0;
  double x = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  int generation = 0;  // generation within the Q_k copy that introduced it
  int level = 0;       // corner-copy index (0 for the base domain)
  std::string circle;  // marked set holding its doubled boundary circle

  double length() const { return y1 - y0; }
};

struct SlitDomainMesh {
  DiscreteSpace space;
  std::string family;  // Q, Qinf, carpet, corner
  int generation = 0;
  double h = 0.0;
  std::vector<Slit> slits;
  std::string outer = "outer";
  std::optional<VertexId> accumulation;  // marked corner vertex standing in for the limit point
};

/// Slit lists without meshes; the geometric registry of Q_n and R_N.
std::vector<Slit> slits_Q(int n);
std::vector<Slit> slits_Q_inf(int N);

SlitDomainMesh gen_Q(int n, double h);
SlitDomainMesh gen_Q_inf(int N, double h);
inline SlitDomainMesh gen_R(int n, double h) { return gen_Q_inf(n, h); }
SlitDomainMesh gen_slit_carpet(int n, double h);

Point project(const SlitDomainMesh& mesh, VertexId v);

/// Corner [0, 2^-n]^2 of a gen_Q_inf mesh, rescaled by 2^n.
SlitDomainMesh rescaled_corner(const SlitDomainMesh& mesh, int n);

struct Disk {
  Point center;
  double radius = 0.0;
};

/// Unit square minus open disks, metrized by the Euclidean restriction.
/// Boundary circles are marked "disk<i>"; the square boundary is "outer".
DiscreteSpace gen_circle_domain(const std::vector<Disk>& disks, double h);

/// Cycle on m points of the circle of circumference 1 centered at (1/2, 1/2).
DiscreteSpace gen_round_circle(int m, MetricKind metric = MetricKind::euclidean);
/// Closed polygon through the given points, marked "circle" in order.
DiscreteSpace gen_closed_curve(const std::vector<Point>& points, MetricKind metric, std::string label);
DiscreteSpace gen_ellipse(int m, double a, double b);

/// The square grid with left and right sides identified; top and bottom free.
DiscreteSpace gen_cylinder(int m);

/// Declared accumulation relations (source marked set -> limit marked set).
std::vector<std::pair<std::string, std::string>> accumulation_relations(const SlitDomainMesh& mesh);

}  // namespace carpetlab
