#include "carpetlab/projection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "carpetlab/metric.hpp"
#include "carpetlab/sampling.hpp"

namespace carpetlab {

namespace {

double finest_pitch(const DiscreteSpace& space) {
  double g = kInf;
  for (const Vertex& x : space.vertices()) {
    if (x.pitch > 0.0) g = std::min(g, x.pitch);
  }
  if (g == kInf) throw InputError("mesh has no pitch information");
  return g;
}

std::int64_t lattice_key(const Point& p, double g) {
  const auto ix = static_cast<std::int64_t>(std::llround(p.x / g));
  const auto iy = static_cast<std::int64_t>(std::llround(p.y / g));
  return ix * 4194304LL + iy;
}

// Bucketed nearest-neighbour distance for a fixed point cloud.
class PointHash {
 public:
  PointHash(const std::vector<Point>& pts, double cell) : pts_(pts), cell_(cell) {
    for (std::size_t i = 0; i < pts.size(); ++i) buckets_[key(cell_of(pts[i].x), cell_of(pts[i].y))].push_back(i);
  }

  double nearest(const Point& q, double limit) const {
    if (pts_.empty()) return kInf;
    const std::int64_t cx = cell_of(q.x), cy = cell_of(q.y);
    double best = kInf;
    const auto max_ring = static_cast<std::int64_t>(std::ceil(limit / cell_)) + 1;
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
      if (best < (ring - 1) * cell_) break;
      for (std::int64_t dx = -ring; dx <= ring; ++dx) {
        for (std::int64_t dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          auto it = buckets_.find(key(cx + dx, cy + dy));
          if (it == buckets_.end()) continue;
          for (std::size_t i : it->second) best = std::min(best, euclid(q, pts_[i]));
        }
      }
    }
    return best;
  }

 private:
  std::int64_t cell_of(double x) const { return static_cast<std::int64_t>(std::floor(x / cell_)); }
  static std::int64_t key(std::int64_t a, std::int64_t b) { return a * 2000003LL + b; }

  const std::vector<Point>& pts_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

std::vector<NetPoint> lattice_net(const SlitDomainMesh& mesh, int k) {
  if (k < 1) throw InputError("lattice size must be positive");
  std::vector<NetPoint> out;
  for (VertexId v = 0; v < mesh.space.size(); ++v) {
    const Point p = project(mesh, v);
    const double fx = p.x * k, fy = p.y * k;
    const double rx = std::round(fx), ry = std::round(fy);
    if (std::abs(fx - rx) < 1e-9 * k && std::abs(fy - ry) < 1e-9 * k) {
      out.push_back({static_cast<int>(rx), static_cast<int>(ry), mesh.space.vertex(v).side, v});
    }
  }
  std::sort(out.begin(), out.end(), [](const NetPoint& a, const NetPoint& b) {
    return std::tie(a.i, a.j, a.side) < std::tie(b.i, b.j, b.side);
  });
  return out;
}

NetComparison compare_nets(const SlitDomainMesh& a, const SlitDomainMesh& b, int k) {
  auto na = lattice_net(a, k), nb = lattice_net(b, k);
  NetComparison rep;
  auto key = [](const NetPoint& p) { return std::make_tuple(p.i, p.j, static_cast<int>(p.side)); };
  std::map<std::tuple<int, int, int>, VertexId> in_b;
  for (const auto& p : nb) in_b[key(p)] = p.v;
  std::vector<std::pair<VertexId, VertexId>> common;
  std::ostringstream msg;
  for (const auto& p : na) {
    auto it = in_b.find(key(p));
    if (it == in_b.end()) msg << "(" << p.i << "," << p.j << "," << to_string(p.side) << ") only in first; ";
    else common.push_back({p.v, it->second});
  }
  rep.same_points = common.size() == na.size() && common.size() == nb.size();
  if (!rep.same_points && nb.size() > common.size()) msg << nb.size() - common.size() << " points only in second; ";
  rep.points = common.size();

  std::vector<VertexId> ta, tb;
  for (auto [u, w] : common) {
    ta.push_back(u);
    tb.push_back(w);
  }
  auto ma = make_mask(a.space.size(), ta), mb = make_mask(b.space.size(), tb);
  std::vector<double> worst(common.size(), 0.0);
  parallel_for(common.size(), [&](std::size_t i) {
    Seed sa{ta[i], 0.0}, sb{tb[i], 0.0};
    DijkstraLimits la, lb;
    la.targets = &ma;
    lb.targets = &mb;
    auto da = dijkstra(a.space, std::span<const Seed>(&sa, 1), la);
    auto db = dijkstra(b.space, std::span<const Seed>(&sb, 1), lb);
    for (std::size_t j = 0; j < common.size(); ++j) worst[i] = std::max(worst[i], std::abs(da[ta[j]] - db[tb[j]]));
  });
  for (double w : worst) rep.max_diff = std::max(rep.max_diff, w);
  rep.detail = msg.str();
  return rep;
}

InclusionResult inclusion_check(const SlitDomainMesh& mesh, VertexId p, double r) {
  if (!(r > 0.0)) throw InputError("radius must be positive");
  const DiscreteSpace& space = mesh.space;
  space.check_vertex(p);
  const double g = finest_pitch(space);
  const Point pp = project(mesh, p);
  auto d = distances_from(space, p, r);

  InclusionResult res;
  std::unordered_set<std::int64_t> good;
  std::vector<VertexId> inside;
  for (VertexId v = 0; v < space.size(); ++v) {
    if (d[v] < r) {
      good.insert(lattice_key(project(mesh, v), g));
      inside.push_back(v);
      if (euclid(project(mesh, v), pp) >= r + 1e-12) res.outer_ok = false;
    }
  }
  std::vector<Point> bad;
  double coarse = g;
  for (VertexId v = 0; v < space.size(); ++v) {
    const Point x = project(mesh, v);
    coarse = std::max(coarse, space.vertex(v).pitch);
    if (euclid(x, pp) <= r + 4.0 * space.vertex(v).pitch && !good.count(lattice_key(x, g))) bad.push_back(x);
  }
  if (bad.empty()) {
    res.c = 1.0;
    res.q = pp;
    return res;
  }
  // evenly strided candidate centres over the ball
  constexpr std::size_t kCandidates = 2048;
  if (inside.size() > kCandidates) {
    const std::size_t stride = (inside.size() + kCandidates - 1) / kCandidates;
    std::vector<VertexId> picked;
    for (std::size_t i = 0; i < inside.size(); i += stride) picked.push_back(inside[i]);
    inside = std::move(picked);
  }
  PointHash hash(bad, std::max(r / 16.0, coarse));
  double best = 0.0;
  for (VertexId v : inside) {
    const Point x = project(mesh, v);
    const double rho = hash.nearest(x, 2.0 * r + 4.0 * coarse) - space.vertex(v).pitch;
    if (rho > best) {
      best = rho;
      res.q = x;
    }
  }
  res.c = std::min(1.0, best / r);
  return res;
}

CoverResult preimage_cover(const SlitDomainMesh& mesh, Point q, double r, double factor) {
  if (!(r > 0.0) || !(factor > 0.0)) throw InputError("radius and factor must be positive");
  CoverResult res;
  res.radius = factor * r;
  std::vector<VertexId> pre;
  for (VertexId v = 0; v < mesh.space.size(); ++v) {
    if (euclid(project(mesh, v), q) < r) pre.push_back(v);
  }
  res.preimage = pre.size();
  std::vector<char> covered(mesh.space.size(), 0);
  for (VertexId v : pre) {
    if (covered[v]) continue;
    ++res.balls;
    auto d = distances_from(mesh.space, v, res.radius);
    for (VertexId w : pre) {
      if (d[w] < res.radius) covered[w] = 1;
    }
  }
  return res;
}

}  // namespace carpetlab
