#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carpetlab/constructions.hpp"

namespace carpetlab {

/// Pullback of the lattice (i/k, j/k), 0 <= i, j <= k: every vertex projecting
/// onto a lattice point, keyed by (i, j, side).
struct NetPoint {
  int i = 0;
  int j = 0;
  Side side = Side::none;
  VertexId v = 0;
};
std::vector<NetPoint> lattice_net(const SlitDomainMesh& mesh, int k);

struct NetComparison {
  bool same_points = false;
  std::size_t points = 0;
  double max_diff = 0.0;  // entrywise sup of |d_a - d_b|
  std::string detail;
};
/// Compares the distance matrices of the two pulled-back nets.
NetComparison compare_nets(const SlitDomainMesh& a, const SlitDomainMesh& b, int k);

struct InclusionResult {
  double c = 0.0;  // largest c with a Euclidean ball B(q, c r) inside pi(B(p, r))
  Point q;
  bool outer_ok = true;  // pi(B(p, r)) inside the Euclidean ball B(pi(p), r)
};
InclusionResult inclusion_check(const SlitDomainMesh& mesh, VertexId p, double r);

struct CoverResult {
  int balls = 0;          // greedy cover count
  double radius = 0.0;    // radius used
  std::size_t preimage = 0;
};
/// Greedy cover of pi^{-1}(B(q, r)) by balls of radius factor * r.
CoverResult preimage_cover(const SlitDomainMesh& mesh, Point q, double r, double factor = 8.0);

}  // namespace carpetlab
