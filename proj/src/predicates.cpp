#include "carpetlab/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "carpetlab/metric.hpp"
#include "carpetlab/sampling.hpp"

namespace carpetlab {

std::string ConstantReport::value_str() const {
  if (infinite) return "inf";
  if (capped) return "fail";
  std::ostringstream os;
  os.precision(10);
  os << value;
  return os.str();
}

double grid_value(double t, double ratio, double cap, bool strict, bool* capped) {
  if (capped) *capped = false;
  auto ok = [&](double g) { return strict ? g > t : g >= t; };
  if (ok(1.0)) return 1.0;
  if (!std::isfinite(t)) {
    if (capped) *capped = true;
    return cap;
  }
  int k = std::max(0, static_cast<int>(std::ceil(std::log(t) / std::log(ratio))));
  while (!ok(std::pow(ratio, k))) ++k;
  while (k > 0 && ok(std::pow(ratio, k - 1))) --k;
  double g = std::pow(ratio, k);
  if (g > cap) {
    if (capped) *capped = true;
    return cap;
  }
  return g;
}

std::vector<std::vector<VertexId>> marked_components(const DiscreteSpace& space,
                                                     std::initializer_list<MarkedKind> kinds) {
  std::vector<const MarkedSet*> sets;
  for (const auto& [_, set] : space.marked()) {
    if (std::find(kinds.begin(), kinds.end(), set.kind) != kinds.end()) sets.push_back(&set);
  }
  std::stable_sort(sets.begin(), sets.end(),
                   [](const MarkedSet* a, const MarkedSet* b) { return a->component < b->component; });
  std::vector<std::vector<VertexId>> out;
  for (const MarkedSet* s : sets) out.push_back(s->ids);
  return out;
}

namespace {

struct Dsu {
  std::vector<VertexId> parent;
  std::vector<std::uint32_t> weight;
  explicit Dsu(std::size_t n) : parent(n), weight(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  VertexId unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    parent[b] = a;
    weight[a] += weight[b];
    return a;
  }
};

// Least entry value t at which the vertices with entry <= t join all targets
// into one component (or join every listed pair). kInf if never within `limit`.
double joining_threshold(const DiscreteSpace& space, const std::vector<double>& entry,
                         const std::vector<VertexId>& targets,
                         const std::vector<std::pair<VertexId, VertexId>>& pairs, double limit) {
  if (targets.empty()) return 0.0;
  std::vector<std::pair<double, VertexId>> order;
  for (std::size_t v = 0; v < entry.size(); ++v) {
    if (entry[v] <= limit) order.push_back({entry[v], static_cast<VertexId>(v)});
  }
  std::sort(order.begin(), order.end());
  Dsu dsu(space.size());
  for (VertexId t : targets) dsu.weight[t] = 1;
  const std::uint32_t total = static_cast<std::uint32_t>(targets.size());
  std::vector<char> added(space.size(), 0);
  std::vector<std::pair<VertexId, VertexId>> open = pairs;
  for (auto [e, v] : order) {
    added[v] = 1;
    for (const Neighbor& nb : space.neighbors(v)) {
      if (added[nb.to]) dsu.unite(v, nb.to);
    }
    if (pairs.empty()) {
      if (dsu.weight[dsu.find(v)] == total) return e;
    } else {
      std::erase_if(open, [&](const auto& p) {
        return added[p.first] && added[p.second] && dsu.find(p.first) == dsu.find(p.second);
      });
      if (open.empty()) return e;
    }
  }
  return kInf;
}

enum class Clause { llc1, llc2, allc };

struct ClauseSetup {
  std::vector<double> entry;
  std::vector<VertexId> targets;
  bool strict = true;
  double ecc = 0.0;
};

ClauseSetup setup_clause(const std::vector<double>& d, double r, Clause clause) {
  ClauseSetup s;
  s.entry.assign(d.size(), kInf);
  for (std::size_t v = 0; v < d.size(); ++v) {
    const double dv = d[v];
    if (!std::isfinite(dv)) continue;
    s.ecc = std::max(s.ecc, dv);
    switch (clause) {
      case Clause::llc1:
        s.entry[v] = dv / r;
        if (dv < r) s.targets.push_back(static_cast<VertexId>(v));
        break;
      case Clause::llc2:
        s.entry[v] = dv > 0.0 ? r / dv : kInf;
        if (dv >= r) s.targets.push_back(static_cast<VertexId>(v));
        break;
      case Clause::allc:
        s.entry[v] = dv > 0.0 ? std::max(r / dv, dv / (2.0 * r)) : kInf;
        if (dv > r && dv < 2.0 * r) s.targets.push_back(static_cast<VertexId>(v));
        break;
    }
  }
  s.strict = clause != Clause::llc2;
  return s;
}

struct SampleResult {
  bool skipped = true;
  double lambda = 0.0;
  bool capped = false;
};

double space_diameter(const DiscreteSpace& space) { return diameter(space); }

ConstantReport connectivity_constant(const DiscreteSpace& space, const SampleSpec& spec, Clause clause) {
  if (spec.samples < 1) throw InputError("need at least one sample");
  const double diam = spec.relative ? space_diameter(space) : 1.0;
  std::vector<SampleResult> results(static_cast<std::size_t>(spec.samples));
  parallel_for(results.size(), [&](std::size_t i) {
    Rng rng(derive_seed(spec.seed, i));
    const VertexId a = static_cast<VertexId>(rng.index(space.size()));
    const double r = rng.log_uniform(spec.r_min, spec.r_max) * diam;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    const double pitch = space.vertex(a).pitch > 0.0 ? space.vertex(a).pitch : space.h();
    if (r < 2.0 * pitch) return;
    auto d = distances_from(space, a);
    ClauseSetup s = setup_clause(d, r, clause);
    if (s.targets.empty()) return;
    if (spec.pairs > 0) {
      for (int p = 0; p < spec.pairs; ++p) {
        pairs.push_back({s.targets[rng.index(s.targets.size())], s.targets[rng.index(s.targets.size())]});
      }
    }
    double t = joining_threshold(space, s.entry, s.targets, pairs, spec.cap);
    SampleResult res;
    res.skipped = false;
    // Past ecc/2r the outer bound of the annulus no longer constrains anything.
    // Once 2 Lambda r passes ecc(a) the outer bound constrains nothing; a join
    // that only happens there is a failure, provided the bound was proper (>= 2).
    const double vacuous = s.ecc / (2.0 * r);
    if (clause == Clause::allc && vacuous >= 2.0 && t >= vacuous) t = kInf;
    res.lambda = grid_value(t, spec.grid_ratio, spec.cap, s.strict, &res.capped);
    results[i] = res;
  });

  ConstantReport rep;
  rep.seed = spec.seed;
  rep.r_min = spec.r_min * diam;
  rep.r_max = spec.r_max * diam;
  rep.slack = spec.slack;
  rep.value = 1.0;
  for (const auto& res : results) {
    if (res.skipped) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples;
    rep.value = std::max(rep.value, res.lambda);
    rep.capped = rep.capped || res.capped;
  }
  if (rep.capped) rep.value = spec.cap;
  switch (clause) {
    case Clause::llc1:
      rep.name = "llc1";
      rep.paper_ref = "lambda-LLC clause (i)";
      break;
    case Clause::llc2:
      rep.name = "llc2";
      rep.paper_ref = "lambda-LLC clause (ii)";
      break;
    case Clause::allc:
      rep.name = "allc";
      rep.paper_ref = "annularly linearly locally connected, R = 2r";
      rep.extra["continuum_diameter_over_r"] = 4.0 * rep.value;
      break;
  }
  return rep;
}

}  // namespace

ConstantReport llc1_constant(const DiscreteSpace& space, const SampleSpec& spec) {
  return connectivity_constant(space, spec, Clause::llc1);
}

ConstantReport llc2_constant(const DiscreteSpace& space, const SampleSpec& spec) {
  return connectivity_constant(space, spec, Clause::llc2);
}

ConstantReport allc_constant(const DiscreteSpace& space, const SampleSpec& spec) {
  return connectivity_constant(space, spec, Clause::allc);
}

bool llc_holds(const DiscreteSpace& space, VertexId center, double r, double lambda, bool first_clause) {
  auto d = distances_from(space, center);
  ClauseSetup s = setup_clause(d, r, first_clause ? Clause::llc1 : Clause::llc2);
  double t = joining_threshold(space, s.entry, s.targets, {}, kInf);
  return s.strict ? t < lambda : t <= lambda;
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

ConstantReport ahlfors_fit(const DiscreteSpace& space, double Q, const SampleSpec& spec) {
  if (!(Q > 0.0)) throw InputError("dimension Q must be positive");
  if (spec.samples < 1 || spec.radii < 2) throw InputError("need samples >= 1 and radii >= 2");
  if (spec.r_min < 4.0 * space.h() || !(spec.r_min < spec.r_max)) {
    throw InputError("ahlfors_fit radii must satisfy 4h <= r_min < r_max");
  }
  std::vector<double> radii(static_cast<std::size_t>(spec.radii));
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double t = static_cast<double>(k) / static_cast<double>(radii.size() - 1);
    radii[k] = spec.r_min * std::pow(spec.r_max / spec.r_min, t);
  }
  std::vector<VertexId> candidates;
  for (std::size_t v = 0; v < space.size(); ++v) {
    if (space.vertices()[v].mass > 0.0) candidates.push_back(static_cast<VertexId>(v));
  }
  if (candidates.empty()) throw InputError("space carries no measure");

  std::vector<std::vector<double>> mu(static_cast<std::size_t>(spec.samples));
  parallel_for(mu.size(), [&](std::size_t i) {
    Rng rng(derive_seed(spec.seed, i));
    VertexId x = candidates[rng.index(candidates.size())];
    auto d = distances_from(space, x, spec.r_max * (1.0 + 1e-6));
    std::vector<std::pair<double, double>> pts;
    for (std::size_t v = 0; v < d.size(); ++v) {
      if (std::isfinite(d[v])) pts.push_back({d[v], space.vertices()[v].mass});
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> prefix(pts.size() + 1, 0.0);
    for (std::size_t k = 0; k < pts.size(); ++k) prefix[k + 1] = prefix[k] + pts[k].second;
    // Vertices on the sphere d = r count half: their dual cells straddle it.
    mu[i].resize(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double tol = 1e-9 * radii[k];
      auto lo = std::lower_bound(pts.begin(), pts.end(), std::make_pair(radii[k] - tol, -kInf));
      auto hi = std::lower_bound(pts.begin(), pts.end(), std::make_pair(radii[k] + tol, -kInf));
      const double inside = prefix[static_cast<std::size_t>(lo - pts.begin())];
      const double sphere = prefix[static_cast<std::size_t>(hi - pts.begin())] - inside;
      mu[i][k] = inside + 0.5 * sphere;
    }
  });

  ConstantReport rep;
  rep.name = "ahlfors";
  rep.paper_ref = "Ahlfors Q-regular";
  rep.seed = spec.seed;
  rep.samples = spec.samples;
  rep.r_min = spec.r_min;
  rep.r_max = spec.r_max;
  rep.slack = spec.slack;
  std::vector<double> lx, ly, px, py;
  double K = 1.0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double best = 0.0;
    for (const auto& m : mu) {
      best = std::max(best, m[k]);
      const double rq = std::pow(radii[k], Q);
      if (m[k] > 0.0) {
        K = std::max({K, rq / m[k], m[k] / rq});
        px.push_back(std::log(radii[k]));
        py.push_back(std::log(m[k]));
      }
    }
    rep.series.push_back({radii[k], best});
    if (best > 0.0) {
      lx.push_back(std::log(radii[k]));
      ly.push_back(std::log(best));
    }
  }
  rep.value = ls_slope(lx, ly);
  rep.extra["K"] = K;
  rep.extra["pooled_slope"] = ls_slope(px, py);
  rep.extra["Q"] = Q;
  return rep;
}

std::vector<int> homogeneity_counts(const std::vector<double>& diams, const std::vector<char>& meets,
                                    double r, int kmax) {
  if (!(r > 0.0)) throw InputError("radius must be positive");
  std::vector<int> n(static_cast<std::size_t>(kmax + 1), 0);
  for (std::size_t i = 0; i < diams.size(); ++i) {
    if (!meets[i] || !(diams[i] > 0.0)) continue;
    for (int k = 0; k <= kmax; ++k) {
      const double lo = std::ldexp(r, -k), hi = std::ldexp(r, -k + 1);
      if (diams[i] > lo && diams[i] <= hi) {
        ++n[static_cast<std::size_t>(k)];
        break;
      }
    }
  }
  return n;
}

std::vector<int> homogeneity_counts(const DiscreteSpace& space, const std::vector<std::vector<VertexId>>& comps,
                                    VertexId x, double r, int kmax) {
  auto d = distances_from(space, x, r);
  std::vector<double> diams(comps.size());
  std::vector<char> meets(comps.size(), 0);
  std::vector<char> used(space.size(), 0);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (VertexId v : comps[i]) {
      if (used[v]) throw InputError("components must be pairwise disjoint");
      used[v] = 1;
      if (d[v] < r) meets[i] = 1;
    }
  }
  parallel_for(comps.size(), [&](std::size_t i) { diams[i] = meets[i] ? diameter(space, comps[i]) : 0.0; });
  return homogeneity_counts(diams, meets, r, kmax);
}

std::vector<int> registry_homogeneity_counts(const std::vector<Slit>& slits, bool include_outer, Point x,
                                             double r, int kmax) {
  std::vector<double> diams;
  std::vector<char> meets;
  for (const Slit& s : slits) {
    const double cy = std::clamp(x.y, s.y0, s.y1);
    diams.push_back(s.length());
    meets.push_back(euclid(x, {s.x, cy}) < r ? 1 : 0);
  }
  if (include_outer) {
    const double dx = std::min(x.x, 1.0 - x.x), dy = std::min(x.y, 1.0 - x.y);
    diams.push_back(std::sqrt(2.0));
    meets.push_back(std::min(dx, dy) < r ? 1 : 0);
  }
  return homogeneity_counts(diams, meets, r, kmax);
}

std::vector<double> planarity_sums(const std::vector<int>& counts, double Q) {
  std::vector<double> sums;
  double s = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    s += counts[k] * std::pow(2.0, -static_cast<double>(k) * Q);
    sums.push_back(s);
  }
  return sums;
}

ConstantReport porosity_constant(const DiscreteSpace& space, std::span<const VertexId> z, const SampleSpec& spec) {
  if (z.empty()) throw InputError("porosity set must be nonempty");
  if (space.metric() != MetricKind::path) throw InputError("porosity needs a path-metric space");
  for (VertexId v : z) space.check_vertex(v);
  const double diam = spec.relative ? diameter(space) : 1.0;
  const auto zmask = make_mask(space.size(), z);

  std::vector<SampleResult> results(static_cast<std::size_t>(spec.samples));
  parallel_for(results.size(), [&](std::size_t i) {
    Rng rng(derive_seed(spec.seed, i));
    const VertexId c = z[rng.index(z.size())];
    const double r = rng.log_uniform(spec.r_min, spec.r_max) * diam;
    const double pitch = space.vertex(c).pitch > 0.0 ? space.vertex(c).pitch : space.h();
    if (r < 4.0 * pitch) return;
    auto dz = distances_from(space, c, r);
    std::vector<char> allowed(space.size(), 0);
    std::vector<Seed> seeds;
    for (std::size_t v = 0; v < dz.size(); ++v) {
      if (!(dz[v] < r)) continue;
      allowed[v] = 1;
      if (zmask[v]) seeds.push_back({static_cast<VertexId>(v), 0.0});
      for (const Neighbor& nb : space.neighbors(static_cast<VertexId>(v))) {
        if (!(dz[nb.to] < r) && !allowed[nb.to]) {
          allowed[nb.to] = 1;
          seeds.push_back({nb.to, 0.0});
        }
      }
    }
    DijkstraLimits limits;
    limits.allowed = &allowed;
    auto rho = dijkstra(space, seeds, limits);
    double best = 0.0;
    for (std::size_t v = 0; v < dz.size(); ++v) {
      if (dz[v] < r && !zmask[v] && std::isfinite(rho[v])) best = std::max(best, rho[v]);
    }
    SampleResult res;
    res.skipped = false;
    res.lambda = grid_value(best > 0.0 ? r / best : kInf, spec.grid_ratio, spec.cap, false, &res.capped);
    results[i] = res;
  });

  ConstantReport rep;
  rep.name = "porosity";
  rep.paper_ref = "porous subset";
  rep.seed = spec.seed;
  rep.r_min = spec.r_min * diam;
  rep.r_max = spec.r_max * diam;
  rep.slack = spec.slack;
  rep.value = 1.0;
  for (const auto& res : results) {
    if (res.skipped) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples;
    rep.value = std::max(rep.value, res.lambda);
    rep.capped = rep.capped || res.capped;
  }
  if (rep.capped) rep.value = spec.cap;
  rep.extra["porous"] = (!rep.capped && rep.samples > 0) ? 1.0 : 0.0;
  return rep;
}

ConstantReport quasicircle_constant(const DiscreteSpace& space, const MarkedSet& circle,
                                    std::optional<MetricKind> metric) {
  if (!circle.cyclic) throw InputError("marked set '" + circle.name + "' has no cyclic order");
  if (circle.ids.size() < 3) throw InputError("a cyclic order needs at least 3 points");
  for (VertexId v : circle.ids) space.check_vertex(v);
  constexpr std::size_t kMaxPoints = 2048;
  std::vector<VertexId> pts;
  const std::size_t stride = (circle.ids.size() + kMaxPoints - 1) / kMaxPoints;
  for (std::size_t i = 0; i < circle.ids.size(); i += stride) pts.push_back(circle.ids[i]);
  const std::size_t n = pts.size();
  const MetricKind kind = metric.value_or(space.metric());

  std::vector<double> d(n * n, 0.0);
  if (kind == MetricKind::euclidean) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = euclid(space.vertex(pts[i]).pos, space.vertex(pts[j]).pos);
    }
  } else {
    auto target = make_mask(space.size(), pts);
    parallel_for(n, [&](std::size_t i) {
      DijkstraLimits limits;
      limits.targets = &target;
      Seed seed{pts[i], 0.0};
      auto dist = dijkstra(space, std::span<const Seed>(&seed, 1), limits);
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = dist[pts[j]];
    });
  }

  // arc[L][i]: diameter of the closed arc of L points starting at i.
  std::vector<double> cur(n);
  double worst = 1.0;
  std::vector<std::vector<double>> arcs(n + 1);
  arcs[1].assign(n, 0.0);
  for (std::size_t L = 2; L <= n; ++L) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + L - 1) % n;
      cur[i] = std::max({arcs[L - 1][i], arcs[L - 1][(i + 1) % n], d[i * n + j]});
    }
    arcs[L] = cur;
  }
  for (std::size_t L = 2; L <= n; ++L) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + L - 1) % n;
      const double dij = d[i * n + j];
      if (!(dij > 0.0)) continue;
      // Complementary arc runs from j forward back to i: n - L + 2 points.
      const double other = arcs[n - L + 2][j];
      worst = std::max(worst, std::min(arcs[L][i], other) / dij);
    }
  }

  ConstantReport rep;
  rep.name = "quasicircle";
  rep.paper_ref = "three-point condition";
  rep.value = worst;
  rep.samples = static_cast<int>(n);
  rep.extra["points"] = static_cast<double>(n);
  return rep;
}

ConstantReport uniform_rel_sep(const DiscreteSpace& space, const std::vector<std::vector<VertexId>>& comps,
                               int threads) {
  if (comps.size() < 2) throw InputError("relative separation needs at least 2 components");
  for (const auto& c : comps) {
    if (c.empty()) throw InputError("components must be nonempty");
  }
  std::vector<double> diams(comps.size());
  parallel_for(comps.size(), [&](std::size_t i) { diams[i] = diameter(space, comps[i]); }, threads);

  std::vector<int> owner(space.size(), -1);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (VertexId v : comps[i]) {
      if (owner[v] >= 0 && owner[v] != static_cast<int>(i)) {
        throw InputError("components must be pairwise disjoint");
      }
      owner[v] = static_cast<int>(i);
    }
  }
  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return diams[a] < diams[b]; });

  double best = kInf;
  std::size_t pairs = 0;
  std::pair<int, int> witness{-1, -1};
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    if (!(diams[i] > 0.0)) continue;  // every pair with a point component is infinite
    std::vector<double> to(comps.size(), kInf);
    if (space.metric() == MetricKind::euclidean) {
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (j != i) to[j] = set_dist(space, comps[i], comps[j]);
      }
    } else {
      const double cutoff = std::isfinite(best) ? best * diams[i] : kInf;
      auto d = distances_from_set(space, comps[i], cutoff);
      for (std::size_t v = 0; v < d.size(); ++v) {
        if (owner[v] >= 0 && std::isfinite(d[v])) {
          auto& slot = to[static_cast<std::size_t>(owner[v])];
          slot = std::min(slot, d[v]);
        }
      }
    }
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      ++pairs;
      RelDistance rd = rel_distance(to[j], diams[i], diams[j]);
      if (rd.infinite || !std::isfinite(rd.value)) continue;
      if (rd.value < best) {
        best = rd.value;
        witness = {static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j))};
      }
    }
  }

  ConstantReport rep;
  rep.name = "relsep";
  rep.paper_ref = "uniformly relatively separated";
  rep.samples = static_cast<int>(pairs);
  rep.infinite = !std::isfinite(best);
  rep.value = rep.infinite ? 0.0 : best;
  rep.extra["witness_a"] = witness.first;
  rep.extra["witness_b"] = witness.second;
  return rep;
}

double box_count_slope(const DiscreteSpace& space, std::span<const VertexId> ids, int jmin, int jmax) {
  if (ids.empty() || jmax <= jmin) throw InputError("box counting needs a nonempty set and jmax > jmin");
  std::vector<double> x, y;
  for (int j = jmin; j <= jmax; ++j) {
    const double s = std::ldexp(1.0, -j);
    std::vector<std::pair<long long, long long>> boxes;
    for (VertexId v : ids) {
      const Point p = space.vertex(v).pos;
      boxes.push_back({static_cast<long long>(std::floor(p.x / s)), static_cast<long long>(std::floor(p.y / s))});
    }
    std::sort(boxes.begin(), boxes.end());
    boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
    x.push_back(j * std::log(2.0));
    y.push_back(std::log(static_cast<double>(boxes.size())));
  }
  return ls_slope(x, y);
}

}  // namespace carpetlab
