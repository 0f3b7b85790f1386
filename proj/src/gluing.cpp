#include "carpetlab/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "carpetlab/predicates.hpp"
#include "carpetlab/sampling.hpp"

namespace carpetlab {

namespace {

struct LipschitzResult {
  double L = 1.0;
  VertexId u = 0, v = 0;
  double d0 = 0.0, di = 0.0;
};

double edge_length_between(const DiscreteSpace& space, VertexId a, VertexId b) {
  double best = kInf;
  for (const Neighbor& nb : space.neighbors(a)) {
    if (nb.to == b) best = std::min(best, nb.length);
  }
  return best;
}

LipschitzResult lipschitz_scan(const DiscreteSpace& base, const DiscreteSpace& patch, const GluingMap& map) {
  if (map.pairs.empty()) throw InputError("gluing map is empty");
  std::set<VertexId> seen_base, seen_patch;
  for (auto [u, p] : map.pairs) {
    base.check_vertex(u);
    patch.check_vertex(p);
    if (!seen_base.insert(u).second) throw InputError("gluing map repeats base vertex " + std::to_string(u));
    if (!seen_patch.insert(p).second) {
      throw InputError("gluing map is not injective: patch vertex " + std::to_string(p) + " used twice");
    }
  }
  if (base.metric() != MetricKind::path || patch.metric() != MetricKind::path) {
    throw InputError("gluing needs path-metric spaces");
  }
  std::vector<VertexId> eb, ep;
  for (auto [u, p] : map.pairs) {
    eb.push_back(u);
    ep.push_back(p);
  }
  if (restricted_components(base, eb).size() != 1) throw InputError("gluing set is not connected in the base");

  const std::size_t k = map.pairs.size();
  std::vector<char> tb = make_mask(base.size(), eb), tp = make_mask(patch.size(), ep);
  std::vector<LipschitzResult> rows(k);
  parallel_for(k, [&](std::size_t i) {
    Seed sb{eb[i], 0.0}, sp{ep[i], 0.0};
    DijkstraLimits lb, lp;
    lb.targets = &tb;
    lp.targets = &tp;
    auto d0 = dijkstra(base, std::span<const Seed>(&sb, 1), lb);
    auto di = dijkstra(patch, std::span<const Seed>(&sp, 1), lp);
    LipschitzResult& row = rows[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const double a = d0[eb[j]], b = di[ep[j]];
      double ratio;
      if (a == 0.0 && b == 0.0) ratio = 1.0;
      else if (a == 0.0 || b == 0.0) ratio = kInf;
      else ratio = std::max(a / b, b / a);
      if (ratio > row.L) row = {ratio, eb[i], eb[j], a, b};
    }
  });
  LipschitzResult worst;
  for (const auto& row : rows) {
    if (row.L > worst.L) worst = row;
  }
  return worst;
}

std::vector<std::size_t> pick_indices(std::size_t n, std::size_t want, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (want == 0 || want >= n) return idx;
  Rng rng(seed);
  for (std::size_t i = 0; i < want; ++i) {
    std::size_t j = i + rng.index(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(want);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<char> component_mask(const GluedSpace& g, int comp) {
  std::vector<char> mask(g.space.size(), 0);
  for (std::size_t v = g.offsets[comp]; v < g.offsets[comp + 1]; ++v) mask[v] = 1;
  return mask;
}

}  // namespace

double verify_bilipschitz(const DiscreteSpace& base, const DiscreteSpace& patch, const GluingMap& map) {
  return lipschitz_scan(base, patch, map).L;
}

GluedSpace glue(const GluingInstance& instance) {
  const DiscreteSpace& base = instance.base;
  GluedSpace out;
  out.C = instance.C;
  out.c = instance.c;
  out.Q = instance.Q;
  out.M = instance.M;

  std::vector<char> used(base.size(), 0);
  for (std::size_t i = 0; i < instance.patches.size(); ++i) {
    const Patch& p = instance.patches[i];
    LipschitzResult res = lipschitz_scan(base, p.space, p.map);
    if (res.L > p.map.L * (1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "bi-Lipschitz check failed for patch " << i << " at declared L=" << p.map.L << ": pair (" << res.u
          << ", " << res.v << ") has base distance " << res.d0 << " and patch distance " << res.di;
      throw InputError(msg.str());
    }
    for (auto [u, q] : p.map.pairs) {
      if (used[u]) throw InputError("gluing sets overlap at base vertex " + std::to_string(u));
      used[u] = 1;
    }
    out.L.push_back(res.L);
    out.declared_L = std::max(out.declared_L, p.map.L);
  }

  SpaceBuilder b;
  b.h(base.h()).label("glue(" + base.label() + ")").metric(MetricKind::path).planar(base.planar());
  out.offsets.push_back(0);
  auto copy_space = [&](const DiscreteSpace& s, int tag) {
    const std::size_t off = b.vertex_count();
    for (VertexId v = 0; v < s.size(); ++v) {
      const Vertex& x = s.vertex(v);
      b.add_vertex(x.pos, x.side, x.pitch, x.mass);
      out.patch_of.push_back(tag);
      out.original.push_back(v);
    }
    for (const Edge& e : s.edges()) {
      b.add_edge(static_cast<VertexId>(off + e.u), static_cast<VertexId>(off + e.v), e.length);
    }
    out.offsets.push_back(b.vertex_count());
    return off;
  };
  copy_space(base, -1);
  for (std::size_t i = 0; i < instance.patches.size(); ++i) {
    const Patch& p = instance.patches[i];
    const std::size_t off = copy_space(p.space, static_cast<int>(i));
    MarkedSet locus{"locus" + std::to_string(i), {}, MarkedKind::gluing_locus, -1, false};
    for (auto [u, q] : p.map.pairs) {
      const auto pu = static_cast<VertexId>(off + q);
      b.add_edge(u, pu, 0.0);
      out.identifications.push_back({u, pu});
      locus.ids.push_back(u);
    }
    b.add_marked(std::move(locus));
    for (const auto& [name, set] : p.space.marked()) {
      MarkedSet copy = set;
      copy.name = "patch" + std::to_string(i) + ":" + name;
      for (VertexId& v : copy.ids) v = static_cast<VertexId>(v + off);
      b.add_marked(std::move(copy));
    }
  }
  for (const auto& [name, set] : base.marked()) {
    MarkedSet copy = set;
    bool covered = std::all_of(set.ids.begin(), set.ids.end(), [&](VertexId v) { return used[v] != 0; });
    if (covered) {
      copy.kind = MarkedKind::gluing_locus;
      copy.component = -1;
    }
    b.add_marked(std::move(copy));
  }
  out.space = std::move(b).build();
  return out;
}

std::vector<double> component_distances(const GluedSpace& glued, VertexId source, double cutoff) {
  glued.space.check_vertex(source);
  auto mask = component_mask(glued, glued.component_of(source));
  Seed s{source, 0.0};
  DijkstraLimits lim;
  lim.cutoff = cutoff;
  lim.allowed = &mask;
  return dijkstra(glued.space, std::span<const Seed>(&s, 1), lim);
}

ComparisonReport comparison_check(const GluedSpace& glued, std::size_t sources, std::uint64_t seed, double tol) {
  const std::size_t n = glued.space.size();
  const double L = glued.declared_L;
  auto picked = pick_indices(n, sources, seed);
  const bool full = picked.size() == n;

  struct Row {
    std::size_t pairs = 0;
    double lo = kInf, hi = 0.0;
    bool fail = false;
    VertexId a = 0, b = 0;
    double d = 0.0, dt = 0.0;
  };
  std::vector<Row> rows(picked.size());
  std::vector<std::vector<char>> masks;
  for (std::size_t c = 0; c < glued.components(); ++c) masks.push_back(component_mask(glued, static_cast<int>(c)));

  parallel_for(picked.size(), [&](std::size_t i) {
    const auto s = static_cast<VertexId>(picked[i]);
    Seed seed0{s, 0.0};
    const int comp = glued.component_of(s);
    auto d = dijkstra(glued.space, std::span<const Seed>(&seed0, 1));
    DijkstraLimits lim;
    lim.allowed = &masks[comp];
    auto dt = dijkstra(glued.space, std::span<const Seed>(&seed0, 1), lim);
    Row& row = rows[i];
    const std::size_t begin = full ? s + 1 : glued.offsets[comp];
    for (std::size_t t = std::max(begin, glued.offsets[comp]); t < glued.offsets[comp + 1]; ++t) {
      if (t == s || dt[t] == kInf) continue;
      ++row.pairs;
      if (dt[t] > 0.0) {
        row.lo = std::min(row.lo, d[t] / dt[t]);
        row.hi = std::max(row.hi, d[t] / dt[t]);
      }
      const bool bad = d[t] < dt[t] / L - tol || d[t] > dt[t] + tol;
      if (bad && !row.fail) {
        row.fail = true;
        row.a = s;
        row.b = static_cast<VertexId>(t);
        row.d = d[t];
        row.dt = dt[t];
      }
    }
  });

  ComparisonReport rep;
  rep.L = L;
  for (const Row& row : rows) {
    rep.pairs += row.pairs;
    rep.min_ratio = std::min(rep.min_ratio, row.lo);
    rep.max_ratio = std::max(rep.max_ratio, row.hi);
    if (row.fail && rep.pass) {
      rep.pass = false;
      rep.witness = {row.a, row.b};
      std::ostringstream msg;
      msg << "pair (" << row.a << ", " << row.b << "): d=" << row.d << " d~=" << row.dt << " L=" << L;
      rep.detail = msg.str();
    }
  }
  return rep;
}

IsometryReport local_isometry_check(const GluedSpace& glued, double r, std::size_t max_centers,
                                    std::uint64_t seed) {
  if (!(r > 0.0)) throw InputError("radius must be positive");
  const std::size_t n = glued.space.size();
  std::vector<Seed> seeds;
  for (const auto& id : glued.identifications) {
    seeds.push_back({id[0], 0.0});
    seeds.push_back({id[1], 0.0});
  }
  std::vector<double> to_locus(n, kInf);
  if (!seeds.empty()) to_locus = dijkstra(glued.space, seeds);

  IsometryReport rep;
  std::vector<std::size_t> eligible;
  for (std::size_t v = 0; v < n; ++v) {
    if (to_locus[v] >= 3.0 * r) eligible.push_back(v);
    else ++rep.skipped;
  }
  auto picked = pick_indices(eligible.size(), max_centers, seed);

  struct Row {
    std::size_t pairs = 0;
    bool fail = false;
    std::array<VertexId, 3> w{0, 0, 0};
    double d = 0.0, dt = 0.0;
  };
  std::vector<Row> rows(picked.size());
  parallel_for(picked.size(), [&](std::size_t i) {
    const auto a = static_cast<VertexId>(eligible[picked[i]]);
    Seed sa{a, 0.0};
    DijkstraLimits lim;
    lim.cutoff = r;
    auto da = dijkstra(glued.space, std::span<const Seed>(&sa, 1), lim);
    std::vector<VertexId> ball_ids;
    for (std::size_t v = 0; v < n; ++v) {
      if (da[v] < r) ball_ids.push_back(static_cast<VertexId>(v));
    }
    Row& row = rows[i];
    for (VertexId b : ball_ids) {
      Seed sb{b, 0.0};
      DijkstraLimits lb;
      lb.cutoff = 2.0 * r;
      auto d = dijkstra(glued.space, std::span<const Seed>(&sb, 1), lb);
      auto dt = component_distances(glued, b, 2.0 * r);
      for (VertexId c : ball_ids) {
        ++row.pairs;
        if (d[c] != dt[c] && !row.fail) {
          row.fail = true;
          row.w = {a, b, c};
          row.d = d[c];
          row.dt = dt[c];
        }
      }
    }
  });
  rep.centers = picked.size();
  for (const Row& row : rows) {
    rep.pairs += row.pairs;
    if (row.fail && rep.pass) {
      rep.pass = false;
      rep.witness = row.w;
      std::ostringstream msg;
      msg << "center " << row.w[0] << ": d(" << row.w[1] << ", " << row.w[2] << ")=" << row.d << " but d~=" << row.dt;
      rep.detail = msg.str();
    }
  }
  return rep;
}

std::vector<std::vector<double>> admissible_distances(const GluedSpace& glued, int max_legs) {
  const std::size_t n = glued.space.size();
  if (n > 2000) throw InputError("admissible-sequence oracle is for small instances");
  std::vector<std::vector<double>> dc(n, std::vector<double>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) dc[v][v] = 0.0;
  for (const Edge& e : glued.space.edges()) {
    if (glued.patch_of[e.u] != glued.patch_of[e.v]) continue;
    dc[e.u][e.v] = std::min(dc[e.u][e.v], e.length);
    dc[e.v][e.u] = std::min(dc[e.v][e.u], e.length);
  }
  for (std::size_t c = 0; c < glued.components(); ++c) {
    const std::size_t lo = glued.offsets[c], hi = glued.offsets[c + 1];
    for (std::size_t k = lo; k < hi; ++k) {
      for (std::size_t i = lo; i < hi; ++i) {
        if (dc[i][k] == kInf) continue;
        for (std::size_t j = lo; j < hi; ++j) {
          dc[i][j] = std::min(dc[i][j], dc[i][k] + dc[k][j]);
        }
      }
    }
  }

  std::vector<std::vector<VertexId>> cls(n);
  for (std::size_t v = 0; v < n; ++v) cls[v].push_back(static_cast<VertexId>(v));
  for (const auto& id : glued.identifications) {
    cls[id[0]].push_back(id[1]);
    cls[id[1]].push_back(id[0]);
  }

  std::vector<std::vector<double>> out(n, std::vector<double>(n, kInf));
  parallel_for(n, [&](std::size_t a) {
    std::vector<double> start(n, kInf), end(n, kInf);
    for (VertexId z : cls[a]) start[z] = 0.0;
    std::vector<double>& best = out[a];
    for (int leg = 0; leg < max_legs; ++leg) {
      std::fill(end.begin(), end.end(), kInf);
      for (std::size_t z = 0; z < n; ++z) {
        if (start[z] == kInf) continue;
        const std::size_t c = glued.component_of(static_cast<VertexId>(z));
        for (std::size_t w = glued.offsets[c]; w < glued.offsets[c + 1]; ++w) {
          end[w] = std::min(end[w], start[z] + dc[z][w]);
        }
      }
      for (std::size_t w = 0; w < n; ++w) {
        for (VertexId rep : cls[w]) best[rep] = std::min(best[rep], end[w]);
      }
      std::fill(start.begin(), start.end(), kInf);
      for (std::size_t w = 0; w < n; ++w) {
        if (end[w] == kInf) continue;
        for (VertexId next : cls[w]) {
          if (next != w) start[next] = std::min(start[next], end[w]);
        }
      }
    }
  });
  return out;
}

FlatnessReport flatness_check(const GluingInstance& instance) {
  FlatnessReport rep;
  for (const Patch& p : instance.patches) {
    std::vector<VertexId> image;
    for (auto [u, q] : p.map.pairs) image.push_back(q);
    const double whole = diameter(p.space);
    const double part = diameter(p.space, image);
    const double c = part > 0.0 ? whole / part : kInf;
    rep.per_patch.push_back(c);
    rep.C = std::max(rep.C, c);
  }
  return rep;
}

DiscreteSpace hemisphere_patch(const std::vector<double>& rim, double perimeter, double pitch, Point center) {
  const std::size_t m = rim.size();
  if (m < 3) throw InputError("hemisphere rim needs at least 3 points");
  if (!(perimeter > 0.0) || !(pitch > 0.0)) throw InputError("perimeter and pitch must be positive");
  const double pi = std::numbers::pi;
  const double R = perimeter / (2.0 * pi);
  const int rings = std::max(2, static_cast<int>(std::lround(pi * R / 2.0 / pitch)));
  const double dtheta = pi / 2.0 / rings;

  std::vector<double> phi(m);
  for (std::size_t k = 0; k < m; ++k) phi[k] = 2.0 * pi * rim[k] / perimeter;
  auto gap = [&](std::size_t k) {  // angle from spoke k to spoke k+1
    double g = phi[(k + 1) % m] - phi[k];
    if (k + 1 == m) g += 2.0 * pi;
    return g;
  };

  SpaceBuilder b;
  b.h(pitch).label("hemisphere").metric(MetricKind::path).planar(true);
  // ring j = rings is the rim; ids ring-major from the rim inward, pole last
  for (int j = rings; j >= 1; --j) {
    const double theta = dtheta * j;
    for (std::size_t k = 0; k < m; ++k) {
      const double rho = R * std::sin(theta);
      const double share = 0.5 * (gap(k) + gap((k + m - 1) % m));
      const double mass = j == rings ? 0.0 : R * R * std::sin(theta) * dtheta * share;
      b.add_vertex({center.x + rho * std::cos(phi[k]), center.y + rho * std::sin(phi[k])}, Side::none, pitch, mass);
    }
  }
  const double cap = 2.0 * pi * R * R * (1.0 - std::cos(dtheta / 2.0));
  const VertexId pole = b.add_vertex(center, Side::none, pitch, cap);
  auto id = [&](int j, std::size_t k) { return static_cast<VertexId>((rings - j) * m + k); };
  for (int j = rings; j >= 1; --j) {
    const double theta = dtheta * j;
    for (std::size_t k = 0; k < m; ++k) {
      b.add_edge(id(j, k), id(j, (k + 1) % m), R * std::sin(theta) * gap(k));
      if (j > 1) b.add_edge(id(j, k), id(j - 1, k), R * dtheta);
      else b.add_edge(id(j, k), pole, R * dtheta);
    }
  }
  MarkedSet rim_set{"rim", {}, MarkedKind::generic, 0, true};
  for (std::size_t k = 0; k < m; ++k) rim_set.ids.push_back(static_cast<VertexId>(k));
  b.add_marked(std::move(rim_set));
  return std::move(b).build();
}

double registry_condition_c(const std::vector<Slit>& slits, double Q, int kmax) {
  std::vector<int> sup(kmax + 1, 0);
  const double top = 2.0 * std::sqrt(2.0);
  for (int ix = 0; ix <= 16; ++ix) {
    for (int iy = 0; iy <= 16; ++iy) {
      const Point z{ix / 16.0, iy / 16.0};
      for (int j = 0; j <= 2 * kmax; ++j) {
        const double r = top * std::pow(2.0, -0.5 * j);
        auto counts = registry_homogeneity_counts(slits, false, z, r, kmax);
        for (int k = 0; k <= kmax; ++k) sup[k] = std::max(sup[k], counts[k]);
      }
    }
  }
  double m = 0.0;
  for (int k = 0; k <= kmax; ++k) m += sup[k] * std::pow(2.0, -k * Q);
  return m;
}

GluingInstance fill_slits_instance(const SlitDomainMesh& mesh) {
  GluingInstance inst;
  inst.base = mesh.space;
  for (const Slit& s : mesh.slits) {
    const MarkedSet& circle = mesh.space.marked(s.circle);
    if (!circle.cyclic) throw InputError("slit circle " + s.circle + " has no cyclic order");
    const auto& ids = circle.ids;
    std::vector<double> rim(ids.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      rim[k] = acc;
      const double len = edge_length_between(mesh.space, ids[k], ids[(k + 1) % ids.size()]);
      if (len == kInf) throw InputError("slit circle " + s.circle + " is not a cycle of edges");
      acc += len;
    }
    Patch p;
    p.space = hemisphere_patch(rim, acc, mesh.h, {s.x, 0.5 * (s.y0 + s.y1)});
    p.map.L = 1.3;
    for (std::size_t k = 0; k < ids.size(); ++k) p.map.pairs.push_back({ids[k], static_cast<VertexId>(k)});
    inst.patches.push_back(std::move(p));
  }
  // registry data: a hemisphere over a circle of length 2l has diameter l
  inst.C = 1.0;
  double c = 1.0;
  for (std::size_t i = 0; i < mesh.slits.size(); ++i) {
    for (std::size_t j = i + 1; j < mesh.slits.size(); ++j) {
      const Slit& a = mesh.slits[i];
      const Slit& b = mesh.slits[j];
      const double dx = a.x - b.x;
      const double dy = std::max({0.0, a.y0 - b.y1, b.y0 - a.y1});
      c = std::min(c, std::hypot(dx, dy) / std::min(a.length(), b.length()));
    }
  }
  inst.c = c;
  inst.Q = 2.0;
  inst.M = registry_condition_c(mesh.slits, inst.Q);
  return inst;
}

GluedSpace fill_slits(const SlitDomainMesh& mesh) {
  GluingInstance inst = fill_slits_instance(mesh);
  for (std::size_t i = 0; i < inst.patches.size(); ++i) {
    const double L = verify_bilipschitz(inst.base, inst.patches[i].space, inst.patches[i].map);
    if (L > 1.3) {
      throw InputError("boundary length mismatch: slit " + std::to_string(i) + " glued with L=" + std::to_string(L));
    }
  }
  return glue(inst);
}

namespace {

DiscreteSpace grid_space(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& label) {
  SpaceBuilder b;
  b.h(ys[1] - ys[0]).label(label).metric(MetricKind::path);
  for (double y : ys) {
    for (double x : xs) b.add_vertex({x, y}, Side::none, ys[1] - ys[0], 0.0);
  }
  const std::size_t nx = xs.size(), ny = ys.size();
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const auto v = static_cast<VertexId>(j * nx + i);
      if (i + 1 < nx) b.add_edge(v, v + 1, xs[i + 1] - xs[i]);
      if (j + 1 < ny) b.add_edge(v, static_cast<VertexId>(v + nx), ys[j + 1] - ys[j]);
    }
  }
  MarkedSet bottom{"bottom", {}, MarkedKind::generic, 0, false};
  for (std::size_t i = 0; i < nx; ++i) bottom.ids.push_back(static_cast<VertexId>(i));
  b.add_marked(std::move(bottom));
  return std::move(b).build();
}

}  // namespace

GluingInstance two_squares_instance() {
  std::vector<double> xs(9), ys(9), stretched(9);
  for (int i = 0; i < 9; ++i) {
    xs[i] = ys[i] = i / 8.0;
    stretched[i] = i <= 2 ? 2.0 * xs[i] : 0.5 + (i - 2) / 12.0;
  }
  stretched[8] = 1.0;
  GluingInstance inst;
  inst.base = grid_space(xs, ys, "square");
  Patch p;
  p.space = grid_space(stretched, ys, "stretched square");
  p.map.L = 2.0;
  for (VertexId i = 0; i < 9; ++i) p.map.pairs.push_back({i, i});
  inst.patches.push_back(std::move(p));
  inst.C = 1.0;
  return inst;
}

GluingInstance random_instance(std::uint64_t seed, int max_vertices, int max_patches) {
  Rng rng(seed);
  const int np = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(std::max(1, max_patches))));
  // budget: base at most half the vertices, the rest split among patches
  const int base_budget = max_vertices / 2;
  const int patch_budget = (max_vertices - base_budget) / np;
  auto weighted_grid = [&](int nx, int ny, const std::string& label) {
    SpaceBuilder b;
    b.h(1.0).label(label).metric(MetricKind::path);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) b.add_vertex({double(i), double(j)}, Side::none, 1.0, 1.0);
    }
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const auto v = static_cast<VertexId>(j * nx + i);
        if (i + 1 < nx) b.add_edge(v, v + 1, double(1 + rng.index(4)));
        if (j + 1 < ny) b.add_edge(v, static_cast<VertexId>(v + nx), double(1 + rng.index(4)));
      }
    }
    return std::move(b).build();
  };

  int bx = 3 + static_cast<int>(rng.index(4));
  int by = std::max(2 * np, 3 + static_cast<int>(rng.index(4)));
  while (bx * by > base_budget && bx > 2) --bx;
  GluingInstance inst;
  inst.base = weighted_grid(bx, by, "random base");
  for (int p = 0; p < np; ++p) {
    int px = 2 + static_cast<int>(rng.index(4));
    int py = 2 + static_cast<int>(rng.index(4));
    while (px * py > patch_budget && py > 1) --py;
    const int len = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(std::min(bx, px))));
    const int start = static_cast<int>(rng.index(static_cast<std::uint64_t>(bx - len + 1)));
    Patch patch;
    patch.space = weighted_grid(px, py, "random patch");
    const int row = 2 * p;  // distinct rows keep the gluing sets disjoint
    for (int k = 0; k < len; ++k) {
      patch.map.pairs.push_back({static_cast<VertexId>(row * bx + start + k), static_cast<VertexId>(k)});
    }
    patch.map.L = verify_bilipschitz(inst.base, patch.space, patch.map);
    inst.patches.push_back(std::move(patch));
  }
  return inst;
}

}  // namespace carpetlab
