#include "carpetlab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace carpetlab {

double euclid(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<char> make_mask(std::size_t n, std::span<const VertexId> ids) {
  std::vector<char> mask(n, 0);
  for (VertexId v : ids) mask[v] = 1;
  return mask;
}

std::vector<double> dijkstra(const DiscreteSpace& space, std::span<const Seed> seeds,
                             const DijkstraLimits& limits) {
  using Item = std::pair<double, VertexId>;
  std::vector<double> dist(space.size(), kInf);
  std::vector<char> done(space.size(), 0);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const Seed& s : seeds) {
    space.check_vertex(s.v);
    if (s.d <= limits.cutoff && s.d < dist[s.v]) {
      dist[s.v] = s.d;
      heap.push({s.d, s.v});
    }
  }
  std::size_t remaining = 0;
  if (limits.targets) {
    remaining = static_cast<std::size_t>(std::count(limits.targets->begin(), limits.targets->end(), 1));
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (limits.targets && (*limits.targets)[u]) {
      if (limits.stop_at_first_target || --remaining == 0) break;
    }
    for (const Neighbor& nb : space.neighbors(u)) {
      if (limits.allowed && !(*limits.allowed)[nb.to]) continue;
      double nd = d + nb.length;
      if (nd < dist[nb.to] && nd <= limits.cutoff) {
        dist[nb.to] = nd;
        heap.push({nd, nb.to});
      }
    }
  }
  // Unsettled entries are tentative when stopping early; drop them.
  if (limits.targets) {
    for (std::size_t v = 0; v < dist.size(); ++v) {
      if (!done[v]) dist[v] = kInf;
    }
  }
  return dist;
}

std::vector<double> distances_from(const DiscreteSpace& space, VertexId source, double cutoff) {
  return distances_from_set(space, std::span<const VertexId>(&source, 1), cutoff);
}

std::vector<double> distances_from_set(const DiscreteSpace& space, std::span<const VertexId> sources,
                                       double cutoff) {
  if (space.metric() == MetricKind::euclidean) {
    std::vector<double> dist(space.size(), kInf);
    for (VertexId s : sources) {
      space.check_vertex(s);
      const Point p = space.vertex(s).pos;
      for (std::size_t v = 0; v < space.size(); ++v) {
        double d = euclid(p, space.vertices()[v].pos);
        if (d <= cutoff) dist[v] = std::min(dist[v], d);
      }
    }
    return dist;
  }
  std::vector<Seed> seeds;
  seeds.reserve(sources.size());
  for (VertexId s : sources) seeds.push_back({s, 0.0});
  DijkstraLimits limits;
  limits.cutoff = cutoff;
  return dijkstra(space, seeds, limits);
}

double shortest_dist(const DiscreteSpace& space, VertexId u, VertexId v) {
  space.check_vertex(u);
  space.check_vertex(v);
  if (u == v) return 0.0;
  if (space.metric() == MetricKind::euclidean) return euclid(space.vertex(u).pos, space.vertex(v).pos);
  std::vector<char> target(space.size(), 0);
  target[v] = 1;
  DijkstraLimits limits;
  limits.targets = &target;
  Seed seed{u, 0.0};
  return dijkstra(space, std::span<const Seed>(&seed, 1), limits)[v];
}

double eccentricity(const DiscreteSpace& space, VertexId v) {
  auto dist = distances_from(space, v);
  return *std::max_element(dist.begin(), dist.end());
}

std::vector<VertexId> ball(const DiscreteSpace& space, VertexId center, double r) {
  std::vector<VertexId> out;
  if (r <= 0.0) {
    space.check_vertex(center);
    return out;
  }
  auto dist = distances_from(space, center, r);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] < r) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::vector<VertexId> closed_ball(const DiscreteSpace& space, VertexId center, double r) {
  if (r < 0.0) throw InputError("radius must be nonnegative");
  std::vector<VertexId> out;
  auto dist = distances_from(space, center, r);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] <= r) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::vector<VertexId> annulus(const DiscreteSpace& space, VertexId center, double r, double R) {
  if (r < 0.0 || !(r < R)) throw InputError("annulus needs 0 <= r < R");
  std::vector<VertexId> out;
  auto dist = distances_from(space, center, R);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] > r && dist[v] < R) out.push_back(static_cast<VertexId>(v));
    else if (r == 0.0 && v != center && dist[v] == 0.0) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::string RelDistance::str() const {
  if (infinite) return "inf";
  std::ostringstream os;
  os.precision(10);
  os << value;
  return os.str();
}

namespace {

void require_nonempty(std::span<const VertexId> ids, const char* what) {
  if (ids.empty()) throw InputError(std::string(what) + " must be nonempty");
}

}  // namespace

double set_dist(const DiscreteSpace& space, std::span<const VertexId> a, std::span<const VertexId> b) {
  require_nonempty(a, "set A");
  require_nonempty(b, "set B");
  for (VertexId v : b) space.check_vertex(v);
  if (space.metric() == MetricKind::euclidean) {
    double best = kInf;
    for (VertexId u : a) {
      space.check_vertex(u);
      for (VertexId v : b) best = std::min(best, euclid(space.vertex(u).pos, space.vertex(v).pos));
    }
    return best;
  }
  auto target = make_mask(space.size(), b);
  std::vector<Seed> seeds;
  for (VertexId u : a) seeds.push_back({u, 0.0});
  DijkstraLimits limits;
  limits.targets = &target;
  limits.stop_at_first_target = true;
  auto dist = dijkstra(space, seeds, limits);
  double best = kInf;
  for (VertexId v : b) best = std::min(best, dist[v]);
  return best;
}

RelDistance rel_distance(double dist, double diam_a, double diam_b) {
  double m = std::min(diam_a, diam_b);
  if (m <= 0.0) return {0.0, true};
  return {dist / m, false};
}

RelDistance rel_distance(const DiscreteSpace& space, std::span<const VertexId> a,
                         std::span<const VertexId> b) {
  double d = set_dist(space, a, b);
  return rel_distance(d, diameter(space, a), diameter(space, b));
}

double hausdorff_dist(const DiscreteSpace& space, std::span<const VertexId> a,
                      std::span<const VertexId> b) {
  require_nonempty(a, "set A");
  require_nonempty(b, "set B");
  auto one_side = [&](std::span<const VertexId> from, std::span<const VertexId> to) {
    auto dist = distances_from_set(space, to);
    double worst = 0.0;
    for (VertexId v : from) {
      space.check_vertex(v);
      worst = std::max(worst, dist[v]);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

double diameter(const DiscreteSpace& space) {
  std::vector<VertexId> all(space.size());
  std::iota(all.begin(), all.end(), 0);
  return diameter(space, all);
}

double diameter(const DiscreteSpace& space, std::span<const VertexId> ids_in) {
  require_nonempty(ids_in, "set");
  std::vector<VertexId> ids(ids_in.begin(), ids_in.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (VertexId v : ids) space.check_vertex(v);
  if (ids.size() == 1) return 0.0;

  if (space.metric() == MetricKind::euclidean) {
    double best = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        best = std::max(best, euclid(space.vertex(ids[i]).pos, space.vertex(ids[j]).pos));
      }
    }
    return best;
  }

  // Eccentricity bounding within the set: ecc(w) lies in
  // [max(ecc(s) - d(s,w), d(s,w)), ecc(s) + d(s,w)] for every searched s.
  const std::size_t k = ids.size();
  std::vector<double> lower(k, 0.0), upper(k, kInf);
  std::vector<char> active(k, 1);
  auto target = make_mask(space.size(), ids);
  double best = 0.0;
  bool pick_upper = true;
  for (;;) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      if (pick == k) {
        pick = i;
        continue;
      }
      if (pick_upper ? upper[i] > upper[pick] : lower[i] < lower[pick]) pick = i;
    }
    if (pick == k) break;
    pick_upper = !pick_upper;

    DijkstraLimits limits;
    limits.targets = &target;
    Seed seed{ids[pick], 0.0};
    auto dist = dijkstra(space, std::span<const Seed>(&seed, 1), limits);
    double ecc = 0.0;
    for (VertexId v : ids) ecc = std::max(ecc, dist[v]);
    best = std::max(best, ecc);
    active[pick] = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      double d = dist[ids[i]];
      lower[i] = std::max({lower[i], ecc - d, d});
      upper[i] = std::min(upper[i], ecc + d);
      if (upper[i] <= best || lower[i] >= upper[i]) active[i] = 0;
      best = std::max(best, lower[i]);
    }
  }
  return best;
}

MarkedSet epsilon_net(const DiscreteSpace& space, double eps) {
  if (!(eps > 0.0)) throw InputError("epsilon must be positive");
  MarkedSet net;
  net.name = "net";
  net.kind = MarkedKind::generic;
  std::vector<char> covered(space.size(), 0);
  for (std::size_t v = 0; v < space.size(); ++v) {
    if (covered[v]) continue;
    net.ids.push_back(static_cast<VertexId>(v));
    auto dist = distances_from(space, static_cast<VertexId>(v), eps);
    for (std::size_t w = 0; w < dist.size(); ++w) {
      if (dist[w] < eps) covered[w] = 1;
    }
  }
  return net;
}

std::vector<int> component_labels(const DiscreteSpace& space, const std::vector<char>& mask, int* count) {
  std::vector<int> label(space.size(), -1);
  int next = 0;
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < space.size(); ++s) {
    if (!mask[s] || label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : space.neighbors(u)) {
        if (mask[nb.to] && label[nb.to] < 0) {
          label[nb.to] = next;
          stack.push_back(nb.to);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

std::vector<std::vector<VertexId>> restricted_components(const DiscreteSpace& space,
                                                         std::span<const VertexId> ids) {
  for (VertexId v : ids) space.check_vertex(v);
  auto mask = make_mask(space.size(), ids);
  int count = 0;
  auto label = component_labels(space, mask, &count);
  std::vector<std::vector<VertexId>> parts(static_cast<std::size_t>(count));
  for (std::size_t v = 0; v < space.size(); ++v) {
    if (label[v] >= 0) parts[static_cast<std::size_t>(label[v])].push_back(static_cast<VertexId>(v));
  }
  return parts;
}

bool epsilon_chain_connected(const DiscreteSpace& space, std::span<const VertexId> ids_in, double eps) {
  if (!(eps > 0.0)) throw InputError("epsilon must be positive");
  std::vector<VertexId> ids(ids_in.begin(), ids_in.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() <= 1) return true;
  for (VertexId v : ids) space.check_vertex(v);

  std::vector<int> index(space.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<int>(i);
  std::vector<std::size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = ids.size();
  for (std::size_t i = 0; i < ids.size() && parts > 1; ++i) {
    auto dist = distances_from(space, ids[i], eps);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (dist[ids[j]] <= eps) {
        auto a = find(i), b = find(j);
        if (a != b) {
          parent[b] = a;
          --parts;
        }
      }
    }
  }
  return parts == 1;
}

}  // namespace carpetlab
