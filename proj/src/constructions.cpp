#include "carpetlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "carpetlab/metric.hpp"

namespace carpetlab {

namespace {

// Axis-aligned block of the lattice meshed at a uniform step (lattice units).
struct Block {
  std::int64_t x0, y0, x1, y1, step;
};

struct Lattice {
  std::int64_t size = 0;  // lattice units across the unit square
  double unit = 0.0;      // length of one lattice unit
  std::vector<Block> blocks;
};

std::int64_t to_lattice(double value, double unit) {
  double q = value / unit;
  auto r = std::llround(q);
  if (std::abs(q - static_cast<double>(r)) > 1e-6) {
    throw ResolutionError("slit coordinate " + std::to_string(value) + " is off the mesh lattice");
  }
  return r;
}

int resolution_exponent(double h) {
  if (!(h > 0.0) || h > 1.0) throw InputError("resolution h must lie in (0, 1]");
  int m = static_cast<int>(std::lround(-std::log2(h)));
  if (std::abs(std::ldexp(1.0, -m) - h) > 1e-15) {
    throw InputError("resolution h must be a power of two");
  }
  return m;
}

struct LatticeSlit {
  std::int64_t x, y0, y1;
};

SlitDomainMesh mesh_slit_domain(const Lattice& lat, std::vector<Slit> slits, const std::string& family,
                                int generation, double h) {
  const std::int64_t S = lat.size;
  const double u = lat.unit;
  auto key = [S](std::int64_t x, std::int64_t y) { return static_cast<std::uint64_t>(y * (S + 1) + x); };

  // Positions, local pitch and dual-cell mass.
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::int64_t> px, py, pstep;
  std::vector<double> pmass;
  for (const Block& b : lat.blocks) {
    const std::int64_t s = b.step;
    const double quarter = (s * u / 2.0) * (s * u / 2.0);
    for (std::int64_t y = b.y0; y <= b.y1; y += s) {
      for (std::int64_t x = b.x0; x <= b.x1; x += s) {
        auto [it, fresh] = index.try_emplace(key(x, y), px.size());
        if (fresh) {
          px.push_back(x);
          py.push_back(y);
          pstep.push_back(s);
          pmass.push_back(0.0);
        }
        std::size_t p = it->second;
        pstep[p] = std::min(pstep[p], s);
        for (int dx : {-1, 1}) {
          for (int dy : {-1, 1}) {
            std::int64_t qx = x + dx * s, qy = y + dy * s;
            if (qx >= b.x0 && qx <= b.x1 && qy >= b.y0 && qy <= b.y1) pmass[p] += quarter;
          }
        }
      }
    }
  }
  auto exists = [&](std::int64_t x, std::int64_t y) { return index.count(key(x, y)) != 0; };

  // Lattice edges; a coarse edge is dropped when a finer vertex sits at its midpoint.
  std::vector<std::pair<std::size_t, std::size_t>> pos_edges;
  std::unordered_set<std::uint64_t> seen;
  auto add_pos_edge = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (seen.insert(static_cast<std::uint64_t>(a) << 32 | b).second) pos_edges.push_back({a, b});
  };
  for (const Block& b : lat.blocks) {
    const std::int64_t s = b.step;
    for (std::int64_t y = b.y0; y <= b.y1; y += s) {
      for (std::int64_t x = b.x0; x <= b.x1; x += s) {
        std::size_t p = index.at(key(x, y));
        if (x + s <= b.x1 && !(s > 1 && exists(x + s / 2, y))) add_pos_edge(p, index.at(key(x + s, y)));
        if (y + s <= b.y1 && !(s > 1 && exists(x, y + s / 2))) add_pos_edge(p, index.at(key(x, y + s)));
      }
    }
  }

  // Slits on the lattice.
  std::vector<LatticeSlit> lslits;
  std::multimap<std::int64_t, std::size_t> by_column;
  for (std::size_t i = 0; i < slits.size(); ++i) {
    LatticeSlit ls{to_lattice(slits[i].x, u), to_lattice(slits[i].y0, u), to_lattice(slits[i].y1, u)};
    if (ls.x <= 0 || ls.x >= S || ls.y0 <= 0 || ls.y1 >= S || ls.y1 - ls.y0 < 2) {
      throw ResolutionError("slit " + std::to_string(slits[i].id) + " is not resolved by the mesh");
    }
    if (!exists(ls.x, ls.y0) || !exists(ls.x, ls.y1)) {
      throw ResolutionError("slit tips are off the mesh lattice");
    }
    lslits.push_back(ls);
    by_column.insert({ls.x, i});
  }
  constexpr int kNone = -1;
  std::vector<int> on_slit(px.size(), kNone);  // interior slit points
  std::vector<int> tip_of(px.size(), kNone);
  for (std::size_t p = 0; p < px.size(); ++p) {
    auto [lo, hi] = by_column.equal_range(px[p]);
    for (auto it = lo; it != hi; ++it) {
      const LatticeSlit& ls = lslits[it->second];
      if (py[p] < ls.y0 || py[p] > ls.y1) continue;
      if (on_slit[p] != kNone || tip_of[p] != kNone) throw InputError("slits intersect");
      if (py[p] == ls.y0 || py[p] == ls.y1) tip_of[p] = static_cast<int>(it->second);
      else on_slit[p] = static_cast<int>(it->second);
    }
  }

  // Vertex ids in (y, x) order; right copies follow their left copy.
  std::vector<std::size_t> order(px.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return py[a] != py[b] ? py[a] < py[b] : px[a] < px[b];
  });
  SpaceBuilder builder;
  std::vector<VertexId> left_id(px.size()), right_id(px.size());
  for (std::size_t p : order) {
    Point pos{px[p] * u, py[p] * u};
    const double pitch = pstep[p] * u;
    const bool boundary = px[p] == 0 || py[p] == 0 || px[p] == S || py[p] == S;
    if (on_slit[p] != kNone) {
      left_id[p] = builder.add_vertex(pos, Side::left, pitch, 0.0);
      right_id[p] = builder.add_vertex(pos, Side::right, pitch, 0.0);
    } else {
      double mass = (boundary || tip_of[p] != kNone) ? 0.0 : pmass[p];
      left_id[p] = right_id[p] = builder.add_vertex(pos, Side::none, pitch, mass);
    }
  }

  for (auto [a, b] : pos_edges) {
    const double len = static_cast<double>(std::abs(px[a] - px[b]) + std::abs(py[a] - py[b])) * u;
    if (py[a] == py[b]) {
      if (px[a] > px[b]) std::swap(a, b);
      auto lo = by_column.upper_bound(px[a]);
      auto hi = by_column.lower_bound(px[b]);
      for (auto it = lo; it != hi; ++it) {
        const LatticeSlit& ls = lslits[it->second];
        if (py[a] > ls.y0 && py[a] < ls.y1) throw ResolutionError("mesh edge crosses a slit");
      }
      builder.add_edge(right_id[a], left_id[b], len);
    } else {
      const bool sa = on_slit[a] != kNone, sb = on_slit[b] != kNone;
      if (sa || sb) {
        builder.add_edge(left_id[a], left_id[b], len);
        builder.add_edge(right_id[a], right_id[b], len);
      } else {
        builder.add_edge(left_id[a], left_id[b], len);
      }
    }
  }

  // Outer boundary ring.
  std::vector<std::size_t> bottom, right, top, left;
  for (std::size_t p = 0; p < px.size(); ++p) {
    if (py[p] == 0) bottom.push_back(p);
    else if (px[p] == S) right.push_back(p);
    else if (py[p] == S) top.push_back(p);
    else if (px[p] == 0) left.push_back(p);
  }
  std::sort(bottom.begin(), bottom.end(), [&](auto a, auto b) { return px[a] < px[b]; });
  std::sort(right.begin(), right.end(), [&](auto a, auto b) { return py[a] < py[b]; });
  std::sort(top.begin(), top.end(), [&](auto a, auto b) { return px[a] > px[b]; });
  std::sort(left.begin(), left.end(), [&](auto a, auto b) { return py[a] > py[b]; });
  MarkedSet outer{"outer", {}, MarkedKind::boundary_component, 0, true};
  for (auto* side : {&bottom, &right, &top, &left}) {
    for (std::size_t p : *side) outer.ids.push_back(left_id[p]);
  }
  builder.add_marked(std::move(outer));

  // Slit circles: bottom tip, left copies upward, top tip, right copies downward.
  std::vector<std::vector<std::size_t>> interior(slits.size());
  for (std::size_t p = 0; p < px.size(); ++p) {
    if (on_slit[p] != kNone) interior[static_cast<std::size_t>(on_slit[p])].push_back(p);
  }
  for (std::size_t i = 0; i < slits.size(); ++i) {
    auto& pts = interior[i];
    std::sort(pts.begin(), pts.end(), [&](auto a, auto b) { return py[a] < py[b]; });
    const LatticeSlit& ls = lslits[i];
    MarkedSet circle{"slit" + std::to_string(slits[i].id), {}, MarkedKind::slit,
                     static_cast<int>(i) + 1, true};
    circle.ids.push_back(left_id[index.at(key(ls.x, ls.y0))]);
    for (std::size_t p : pts) circle.ids.push_back(left_id[p]);
    circle.ids.push_back(left_id[index.at(key(ls.x, ls.y1))]);
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) circle.ids.push_back(right_id[*it]);
    slits[i].circle = circle.name;
    builder.add_marked(std::move(circle));
  }

  SlitDomainMesh mesh;
  if (family == "Qinf") {
    VertexId origin = left_id[index.at(key(0, 0))];
    builder.add_marked({"accumulation", {origin}, MarkedKind::generic, -1, false});
    mesh.accumulation = origin;
  }
  builder.h(h).label(family + "(" + std::to_string(generation) + ")").metric(MetricKind::path).planar(true);
  mesh.space = std::move(builder).build();
  mesh.family = family;
  mesh.generation = generation;
  mesh.h = h;
  mesh.slits = std::move(slits);
  return mesh;
}

void renumber(std::vector<Slit>& slits) {
  for (std::size_t i = 0; i < slits.size(); ++i) slits[i].id = static_cast<int>(i);
}

}  // namespace

std::vector<Slit> slits_Q(int n) {
  if (n < 0) throw InputError("generation must be nonnegative");
  std::vector<Slit> out;
  for (int k = 1; k <= n; ++k) {
    const double side = std::ldexp(1.0, -(k - 1));
    const int count = 1 << (k - 1);
    for (int j = 0; j < count; ++j) {
      for (int i = 0; i < count; ++i) {
        Slit s;
        s.x = (i + 0.5) * side;
        s.y0 = (j + 0.25) * side;
        s.y1 = (j + 0.75) * side;
        s.generation = k;
        s.level = 0;
        out.push_back(s);
      }
    }
  }
  renumber(out);
  return out;
}

std::vector<Slit> slits_Q_inf(int N) {
  if (N < 0) throw InputError("truncation generation must be nonnegative");
  std::vector<Slit> out = slits_Q(1);
  for (int n = 1; n <= N; ++n) {
    const double c = std::ldexp(1.0, -n);
    std::erase_if(out, [c](const Slit& s) { return s.x > 0.0 && s.x < c && s.y0 > 0.0 && s.y1 < c; });
    for (Slit s : slits_Q(n + 1)) {
      s.x *= c;
      s.y0 *= c;
      s.y1 *= c;
      s.level = n;
      out.push_back(s);
    }
  }
  renumber(out);
  return out;
}

SlitDomainMesh gen_Q(int n, double h) {
  if (n < 0) throw InputError("generation must be nonnegative");
  const int m = resolution_exponent(h);
  if (m < n + 2) {
    throw ResolutionError("gen_Q(" + std::to_string(n) + ") needs h <= 2^-" + std::to_string(n + 2));
  }
  Lattice lat;
  lat.size = std::int64_t{1} << m;
  lat.unit = h;
  lat.blocks.push_back({0, 0, lat.size, lat.size, 1});
  return mesh_slit_domain(lat, slits_Q(n), "Q", n, h);
}

SlitDomainMesh gen_Q_inf(int N, double h) {
  if (N < 0) throw InputError("truncation generation must be nonnegative");
  const int m = resolution_exponent(h);
  if (m < N + 3) {
    throw ResolutionError("gen_Q_inf(" + std::to_string(N) + ") needs h <= 2^-" + std::to_string(N + 3));
  }
  // Level k holds [0,2^-k]^2 minus [0,2^-k-1)^2 at pitch h 2^-k; the innermost
  // square [0,2^-N]^2 is meshed at pitch h 2^-N.
  Lattice lat;
  lat.size = std::int64_t{1} << (m + N);
  lat.unit = std::ldexp(h, -N);
  for (int k = 0; k < N; ++k) {
    const std::int64_t side = lat.size >> k;
    const std::int64_t step = std::int64_t{1} << (N - k);
    lat.blocks.push_back({0, side / 2, side, side, step});
    lat.blocks.push_back({side / 2, 0, side, side / 2, step});
  }
  const std::int64_t inner = lat.size >> N;
  lat.blocks.push_back({0, 0, inner, inner, 1});
  return mesh_slit_domain(lat, slits_Q_inf(N), "Qinf", N, h);
}

SlitDomainMesh gen_slit_carpet(int n, double h) {
  SlitDomainMesh mesh = gen_Q(n, h);
  mesh.family = "carpet";
  return mesh;
}

Point project(const SlitDomainMesh& mesh, VertexId v) {
  mesh.space.check_vertex(v);
  return mesh.space.vertex(v).pos;
}

SlitDomainMesh rescaled_corner(const SlitDomainMesh& mesh, int n) {
  if (mesh.family != "Qinf" && mesh.family != "corner") {
    throw InputError("rescaled_corner expects a gen_Q_inf mesh");
  }
  if (n < 0 || n > mesh.generation) {
    throw InputError("corner level " + std::to_string(n) + " exceeds truncation generation " +
                     std::to_string(mesh.generation));
  }
  const DiscreteSpace& src = mesh.space;
  const double c = std::ldexp(1.0, -n);
  const double scale = std::ldexp(1.0, n);
  const double tol = 1e-9 * c;

  std::vector<VertexId> new_id(src.size(), static_cast<VertexId>(-1));
  SpaceBuilder builder;
  for (std::size_t v = 0; v < src.size(); ++v) {
    const Vertex& vx = src.vertices()[v];
    if (vx.pos.x > c + tol || vx.pos.y > c + tol) continue;
    const bool on_right = std::abs(vx.pos.x - c) <= tol;
    const bool on_top = std::abs(vx.pos.y - c) <= tol;
    if (on_right && vx.side == Side::right) continue;
    Side side = on_right ? Side::none : vx.side;
    double mass = (on_right || on_top) ? 0.0 : vx.mass * scale * scale;
    new_id[v] = builder.add_vertex({vx.pos.x * scale, vx.pos.y * scale}, side, vx.pitch * scale, mass);
  }
  for (const Edge& e : src.edges()) {
    if (new_id[e.u] == static_cast<VertexId>(-1) || new_id[e.v] == static_cast<VertexId>(-1)) continue;
    builder.add_edge(new_id[e.u], new_id[e.v], e.length * scale);
  }

  // Slits strictly inside the corner keep their circles; the rest become outer boundary.
  SlitDomainMesh out;
  for (const Slit& s : mesh.slits) {
    if (!(s.x > 0.0 && s.x < c - tol && s.y0 > 0.0 && s.y1 < c - tol)) continue;
    Slit t = s;
    t.x *= scale;
    t.y0 *= scale;
    t.y1 *= scale;
    t.level -= n;
    out.slits.push_back(t);
  }
  renumber(out.slits);
  std::size_t k = 0;
  for (const Slit& s : mesh.slits) {
    if (!(s.x > 0.0 && s.x < c - tol && s.y0 > 0.0 && s.y1 < c - tol)) continue;
    const MarkedSet& old = src.marked(s.circle);
    Slit& t = out.slits[k++];
    MarkedSet circle{"slit" + std::to_string(t.id), {}, MarkedKind::slit, t.id + 1, true};
    for (VertexId v : old.ids) circle.ids.push_back(new_id[v]);
    t.circle = circle.name;
    builder.add_marked(std::move(circle));
  }

  // Outer ring of the corner square, walked counterclockwise from the origin.
  struct Item {
    int edge;
    double t;
    VertexId id;
  };
  std::vector<Item> ring;
  for (std::size_t v = 0; v < src.size(); ++v) {
    if (new_id[v] == static_cast<VertexId>(-1)) continue;
    const Point p = src.vertices()[v].pos;
    if (std::abs(p.y) <= tol) ring.push_back({0, p.x, new_id[v]});
    else if (std::abs(p.x - c) <= tol) ring.push_back({1, p.y, new_id[v]});
    else if (std::abs(p.y - c) <= tol) ring.push_back({2, -p.x, new_id[v]});
    else if (std::abs(p.x) <= tol) ring.push_back({3, -p.y, new_id[v]});
  }
  std::sort(ring.begin(), ring.end(), [](const Item& a, const Item& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.t < b.t;
  });
  MarkedSet outer{"outer", {}, MarkedKind::boundary_component, 0, true};
  for (const Item& it : ring) outer.ids.push_back(it.id);
  builder.add_marked(std::move(outer));
  if (mesh.accumulation) {
    out.accumulation = new_id[*mesh.accumulation];
    builder.add_marked({"accumulation", {*out.accumulation}, MarkedKind::generic, -1, false});
  }

  out.generation = mesh.generation - n;
  out.h = mesh.h;
  out.family = "corner";
  builder.h(mesh.h).label("corner(" + std::to_string(mesh.generation) + "," + std::to_string(n) + ")");
  builder.metric(MetricKind::path).planar(true);
  out.space = std::move(builder).build();
  return out;
}

DiscreteSpace gen_circle_domain(const std::vector<Disk>& disks, double h) {
  const int m = resolution_exponent(h);
  const std::int64_t S = std::int64_t{1} << m;
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const Disk& d = disks[i];
    if (!(d.radius > 0.0)) throw InputError("disk radius must be positive");
    if (d.center.x - d.radius < 0.0 || d.center.x + d.radius > 1.0 || d.center.y - d.radius < 0.0 ||
        d.center.y + d.radius > 1.0) {
      throw InputError("disk " + std::to_string(i) + " is not contained in the unit square");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (euclid(d.center, disks[j].center) <= d.radius + disks[j].radius) {
        throw InputError("disks " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
  }

  SpaceBuilder builder;
  std::vector<VertexId> grid(static_cast<std::size_t>((S + 1) * (S + 1)), static_cast<VertexId>(-1));
  auto at = [&](std::int64_t i, std::int64_t j) -> VertexId& {
    return grid[static_cast<std::size_t>(j * (S + 1) + i)];
  };
  auto clear_of_disks = [&](Point p) {
    for (const Disk& d : disks) {
      if (euclid(p, d.center) < d.radius + 0.5 * h) return false;
    }
    return true;
  };
  for (std::int64_t j = 0; j <= S; ++j) {
    for (std::int64_t i = 0; i <= S; ++i) {
      Point p{i * h, j * h};
      if (!clear_of_disks(p)) continue;
      const bool boundary = i == 0 || j == 0 || i == S || j == S;
      at(i, j) = builder.add_vertex(p, Side::none, h, boundary ? 0.0 : h * h);
    }
  }
  for (std::int64_t j = 0; j <= S; ++j) {
    for (std::int64_t i = 0; i <= S; ++i) {
      if (at(i, j) == static_cast<VertexId>(-1)) continue;
      if (i < S && at(i + 1, j) != static_cast<VertexId>(-1)) builder.add_edge(at(i, j), at(i + 1, j), h);
      if (j < S && at(i, j + 1) != static_cast<VertexId>(-1)) builder.add_edge(at(i, j), at(i, j + 1), h);
    }
  }

  for (std::size_t k = 0; k < disks.size(); ++k) {
    const Disk& d = disks[k];
    int count = static_cast<int>(std::ceil(2.0 * std::numbers::pi * d.radius / h / 4.0)) * 4;
    count = std::max(count, 8);
    MarkedSet circle{"disk" + std::to_string(k), {}, MarkedKind::boundary_component,
                     static_cast<int>(k) + 1, true};
    for (int t = 0; t < count; ++t) {
      const double theta = 2.0 * std::numbers::pi * t / count;
      Point p{d.center.x + d.radius * std::cos(theta), d.center.y + d.radius * std::sin(theta)};
      circle.ids.push_back(builder.add_vertex(p, Side::none, h, 0.0));
    }
    for (int t = 0; t < count; ++t) {
      VertexId a = circle.ids[static_cast<std::size_t>(t)];
      VertexId b = circle.ids[static_cast<std::size_t>((t + 1) % count)];
      builder.add_edge(a, b, euclid(builder.vertex(a).pos, builder.vertex(b).pos));
    }
    // Tie each circle point to its nearest surviving grid vertex.
    for (VertexId c : circle.ids) {
      const Point p = builder.vertex(c).pos;
      VertexId best = static_cast<VertexId>(-1);
      double best_d = kInf;
      const std::int64_t ci = std::llround(p.x / h), cj = std::llround(p.y / h);
      for (std::int64_t j = std::max<std::int64_t>(0, cj - 2); j <= std::min(S, cj + 2); ++j) {
        for (std::int64_t i = std::max<std::int64_t>(0, ci - 2); i <= std::min(S, ci + 2); ++i) {
          VertexId g = at(i, j);
          if (g == static_cast<VertexId>(-1)) continue;
          double dd = euclid(p, builder.vertex(g).pos);
          if (dd < best_d) {
            best_d = dd;
            best = g;
          }
        }
      }
      if (best == static_cast<VertexId>(-1)) throw ResolutionError("disk boundary is not resolved by the grid");
      builder.add_edge(c, best, best_d);
    }
    builder.add_marked(std::move(circle));
  }

  MarkedSet outer{"outer", {}, MarkedKind::boundary_component, 0, true};
  for (std::int64_t i = 0; i < S; ++i) outer.ids.push_back(at(i, 0));
  for (std::int64_t j = 0; j < S; ++j) outer.ids.push_back(at(S, j));
  for (std::int64_t i = S; i > 0; --i) outer.ids.push_back(at(i, S));
  for (std::int64_t j = S; j > 0; --j) outer.ids.push_back(at(0, j));
  for (VertexId v : outer.ids) {
    if (v == static_cast<VertexId>(-1)) throw InputError("disks must not touch the square boundary");
  }
  builder.add_marked(std::move(outer));
  builder.h(h).label("circles(" + std::to_string(disks.size()) + ")").metric(MetricKind::euclidean);
  return std::move(builder).build();
}

DiscreteSpace gen_closed_curve(const std::vector<Point>& points, MetricKind metric, std::string label) {
  if (points.size() < 3) throw InputError("a closed curve needs at least 3 points");
  SpaceBuilder builder;
  const std::size_t m = points.size();
  MarkedSet circle{"circle", {}, MarkedKind::boundary_component, 0, true};
  for (const Point& p : points) circle.ids.push_back(builder.add_vertex(p, Side::none, 0.0, 0.0));
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double len = euclid(points[i], points[(i + 1) % m]);
    builder.add_edge(circle.ids[i], circle.ids[(i + 1) % m], len);
    total += len;
  }
  for (std::size_t i = 0; i < m; ++i) {
    Vertex& v = builder.vertex(circle.ids[i]);
    v.pitch = total / static_cast<double>(m);
    v.mass = v.pitch;
  }
  builder.add_marked(std::move(circle));
  builder.h(total / static_cast<double>(m)).label(std::move(label)).metric(metric);
  return std::move(builder).build();
}

DiscreteSpace gen_round_circle(int m, MetricKind metric) {
  if (m < 3) throw InputError("a round circle needs m >= 3");
  const double radius = 0.5 / std::numbers::pi;
  std::vector<Point> pts;
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / m;
    pts.push_back({0.5 + radius * std::cos(theta), 0.5 + radius * std::sin(theta)});
  }
  return gen_closed_curve(pts, metric, "round(" + std::to_string(m) + ")");
}

DiscreteSpace gen_ellipse(int m, double a, double b) {
  if (m < 3) throw InputError("an ellipse needs m >= 3");
  std::vector<Point> pts;
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / m;
    pts.push_back({0.5 + a * std::cos(theta), 0.5 + b * std::sin(theta)});
  }
  return gen_closed_curve(pts, MetricKind::euclidean, "ellipse(" + std::to_string(m) + ")");
}

DiscreteSpace gen_cylinder(int m) {
  if (m < 3) throw InputError("cylinder needs m >= 3");
  const double h = 1.0 / m;
  SpaceBuilder builder;
  auto id = [m](int i, int j) { return static_cast<VertexId>(j * m + i); };
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i < m; ++i) {
      const bool boundary = j == 0 || j == m;
      builder.add_vertex({i * h, j * h}, Side::none, h, boundary ? 0.0 : h * h);
    }
  }
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i < m; ++i) {
      builder.add_edge(id(i, j), id((i + 1) % m, j), h);
      if (j < m) builder.add_edge(id(i, j), id(i, j + 1), h);
    }
  }
  MarkedSet bottom{"bottom", {}, MarkedKind::boundary_component, 0, true};
  MarkedSet top{"top", {}, MarkedKind::boundary_component, 1, true};
  for (int i = 0; i < m; ++i) {
    bottom.ids.push_back(id(i, 0));
    top.ids.push_back(id(i, m));
  }
  builder.add_marked(std::move(bottom));
  builder.add_marked(std::move(top));
  builder.h(h).label("cylinder(" + std::to_string(m) + ")");
  return std::move(builder).build();
}

std::vector<std::pair<std::string, std::string>> accumulation_relations(const SlitDomainMesh& mesh) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!mesh.accumulation) return out;
  for (const Slit& s : mesh.slits) out.push_back({s.circle, mesh.outer});
  return out;
}

}  // namespace carpetlab
