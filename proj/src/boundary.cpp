#include "carpetlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "carpetlab/metric.hpp"
#include "carpetlab/sampling.hpp"

namespace carpetlab {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Pairs of boundary vertices closer than eps(v) in the space metric.
void chain_edges_path(const DiscreteSpace& space, const std::vector<VertexId>& fringe,
                      const std::vector<int>& slot, double eps_factor, Dsu& dsu) {
  std::vector<double> dist(space.size(), kInf);
  std::vector<VertexId> touched;
  using Item = std::pair<double, VertexId>;
  for (VertexId s : fringe) {
    const double eps = eps_factor * space.vertex(s).pitch;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    touched.push_back(s);
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      if (slot[u] >= 0) dsu.join(slot[s], slot[u]);
      for (const Neighbor& nb : space.neighbors(u)) {
        const double nd = d + nb.length;
        if (nd < eps && nd < dist[nb.to]) {
          if (dist[nb.to] == kInf) touched.push_back(nb.to);
          dist[nb.to] = nd;
          pq.push({nd, nb.to});
        }
      }
    }
    for (VertexId t : touched) dist[t] = kInf;
    touched.clear();
  }
}

void chain_edges_euclid(const DiscreteSpace& space, const std::vector<VertexId>& fringe, double eps_factor,
                        Dsu& dsu) {
  double cell = 0.0;
  for (VertexId v : fringe) cell = std::max(cell, eps_factor * space.vertex(v).pitch);
  if (cell <= 0.0) throw InputError("boundary vertices need a positive pitch");
  std::unordered_map<std::int64_t, std::vector<int>> grid;
  auto key = [](std::int64_t a, std::int64_t b) { return a * 1000003LL + b; };
  auto cell_of = [&](const Point& p) {
    return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor(p.x / cell)),
                                                 static_cast<std::int64_t>(std::floor(p.y / cell))};
  };
  for (std::size_t i = 0; i < fringe.size(); ++i) {
    auto [cx, cy] = cell_of(space.vertex(fringe[i]).pos);
    grid[key(cx, cy)].push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < fringe.size(); ++i) {
    const Vertex& a = space.vertex(fringe[i]);
    const double eps = eps_factor * a.pitch;
    auto [cx, cy] = cell_of(a.pos);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key(cx + dx, cy + dy));
        if (it == grid.end()) continue;
        for (int j : it->second) {
          if (euclid(a.pos, space.vertex(fringe[j]).pos) < eps) dsu.join(static_cast<int>(i), j);
        }
      }
    }
  }
}

std::vector<char> fringe_mask(const DiscreteSpace& space) {
  auto m = space.boundary_mask();
  return std::vector<char>(m.begin(), m.end());
}

}  // namespace

int ComponentSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

ComponentSpace boundary_components(const DiscreteSpace& space, double eps_factor, bool with_hausdorff) {
  if (!(eps_factor > 0.0)) throw InputError("epsilon factor must be positive");
  const auto mask = space.boundary_mask();
  std::vector<VertexId> fringe;
  std::vector<int> slot(space.size(), -1);
  for (VertexId v = 0; v < space.size(); ++v) {
    if (mask[v]) {
      slot[v] = static_cast<int>(fringe.size());
      fringe.push_back(v);
    }
  }
  if (fringe.empty()) throw InputError("space has no marked boundary vertices");

  Dsu dsu(fringe.size());
  if (space.metric() == MetricKind::euclidean) chain_edges_euclid(space, fringe, eps_factor, dsu);
  else chain_edges_path(space, fringe, slot, eps_factor, dsu);

  std::map<int, std::vector<VertexId>> groups;
  for (std::size_t i = 0; i < fringe.size(); ++i) groups[dsu.find(static_cast<int>(i))].push_back(fringe[i]);

  // registry: vertex -> marked boundary set
  std::vector<int> reg(space.size(), -1);
  std::map<int, const MarkedSet*> reg_sets;
  for (const auto& [name, set] : space.marked()) {
    if (set.kind != MarkedKind::boundary_component && set.kind != MarkedKind::slit) continue;
    reg_sets[set.component] = &set;
    for (VertexId v : set.ids) reg[v] = set.component;
  }

  ComponentSpace cs;
  std::vector<std::vector<VertexId>> parts;
  for (auto& [root, ids] : groups) parts.push_back(std::move(ids));
  std::ostringstream problems;
  std::vector<int> regs;
  std::set<int> seen;
  for (const auto& part : parts) {
    std::set<int> ids;
    for (VertexId v : part) ids.insert(reg[v]);
    int r = ids.size() == 1 ? *ids.begin() : -1;
    if (ids.size() != 1 || r < 0) {
      cs.registry_match = false;
      problems << "chain class at vertex " << part.front() << " spans " << ids.size() << " registry sets; ";
      r = -1;
    } else if (!seen.insert(r).second) {
      cs.registry_match = false;
      problems << "registry component " << r << " split across chain classes; ";
    } else if (reg_sets.count(r) && reg_sets[r]->ids.size() != part.size()) {
      cs.registry_match = false;
      problems << "registry component " << r << " size differs from its chain class; ";
    }
    regs.push_back(r);
  }
  for (const auto& [id, set] : reg_sets) {
    if (!seen.count(id)) {
      cs.registry_match = false;
      problems << "registry component " << id << " (" << set->name << ") not found; ";
    }
  }
  cs.detail = problems.str();

  std::vector<std::size_t> order(parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (cs.registry_match) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return regs[a] < regs[b]; });
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    cs.members.push_back(parts[i]);
    cs.registry_id.push_back(regs[i]);
    cs.names.push_back(regs[i] >= 0 && reg_sets.count(regs[i]) ? reg_sets[regs[i]]->name
                                                                 : "chain" + std::to_string(k));
  }

  if (with_hausdorff) {
    const std::size_t k = cs.size();
    std::vector<std::vector<double>> fields(k);
    parallel_for(k, [&](std::size_t i) { fields[i] = distances_from_set(space, cs.members[i]); });
    cs.hausdorff.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        double h = 0.0;
        for (VertexId v : cs.members[i]) h = std::max(h, fields[j][v]);
        for (VertexId v : cs.members[j]) h = std::max(h, fields[i][v]);
        cs.hausdorff[i][j] = cs.hausdorff[j][i] = h;
      }
    }
  }
  return cs;
}

void declare_relations(ComponentSpace& cs, const std::vector<std::pair<std::string, std::string>>& relations) {
  for (const auto& [from, to] : relations) {
    const int a = cs.index_of(from), b = cs.index_of(to);
    if (a < 0 || b < 0) throw InputError("accumulation relation names an unknown component: " + from + " -> " + to);
    cs.relations.push_back({a, b});
  }
}

ComponentSpace component_space(const SlitDomainMesh& mesh) {
  ComponentSpace cs = boundary_components(mesh.space);
  declare_relations(cs, accumulation_relations(mesh));
  return cs;
}

int rank(const ComponentSpace& cs) {
  const std::size_t n = cs.size();
  std::vector<std::vector<int>> out(n);
  for (auto [a, b] : cs.relations) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
      throw InputError("accumulation relation refers to a missing component");
    }
    out[a].push_back(b);
  }
  // cycle detection by iterative colouring
  std::vector<int> colour(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
    colour[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < out[v].size()) {
        const int w = out[v][i++];
        if (colour[w] == 1) throw InputError("accumulation relations are cyclic at " + cs.names[w]);
        if (colour[w] == 0) {
          colour[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        colour[v] = 2;
        stack.pop_back();
      }
    }
  }
  std::vector<char> alive(n, 1);
  int r = 0;
  for (;;) {
    bool active = false;
    for (auto [a, b] : cs.relations) active = active || (alive[a] && alive[b]);
    if (!active) return r;
    std::vector<char> next(n, 0);
    for (auto [a, b] : cs.relations) {
      if (alive[a]) next[b] = 1;
    }
    alive = std::move(next);
    ++r;
  }
}

ComponentSpace synthetic_chain(int limits, int leaves) {
  if (limits < 1 || leaves < 1) throw InputError("synthetic chain needs at least one limit and one leaf");
  ComponentSpace cs;
  cs.names.push_back("top");
  for (int i = 0; i < limits; ++i) {
    const int li = static_cast<int>(cs.names.size());
    cs.names.push_back("limit" + std::to_string(i));
    cs.relations.push_back({li, 0});
    for (int j = 0; j < leaves; ++j) {
      cs.relations.push_back({static_cast<int>(cs.names.size()), li});
      cs.names.push_back("leaf" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  cs.members.resize(cs.names.size());
  cs.registry_id.assign(cs.names.size(), -1);
  return cs;
}

VertexId deepest_vertex(const DiscreteSpace& space) {
  auto fringe = fringe_mask(space);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < space.size(); ++v) {
    if (fringe[v]) ids.push_back(v);
  }
  if (ids.empty()) throw InputError("space has no marked boundary vertices");
  auto d = distances_from_set(space, ids);
  VertexId best = 0;
  for (VertexId v = 1; v < space.size(); ++v) {
    if (d[v] > d[best]) best = v;
  }
  return best;
}

EndProfile ends(const DiscreteSpace& space, VertexId basepoint, std::vector<double> widths) {
  if (!space.planar()) throw InputError("ends analysis refuses non-planar construction " + space.label());
  space.check_vertex(basepoint);
  auto fringe = fringe_mask(space);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < space.size(); ++v) {
    if (fringe[v]) ids.push_back(v);
  }
  if (ids.empty()) throw InputError("space has no marked boundary vertices");
  auto d = distances_from_set(space, ids);
  const double s = d[basepoint];
  if (!(s > 0.0)) throw InputError("basepoint lies on the fringe");
  if (widths.empty()) {
    double pitch = kInf;
    for (const Vertex& x : space.vertices()) {
      if (x.pitch > 0.0) pitch = std::min(pitch, x.pitch);
    }
    for (double f : {3.0, 4.0, 6.0, 8.0, 12.0}) {
      if (widths.size() < 2 || s / f >= 2.0 * pitch) widths.push_back(s / f);
    }
  }
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0.0) || widths[i] > s) throw InputError("collar widths must lie in (0, dist(basepoint, fringe)]");
    if (i > 0 && !(widths[i] < widths[i - 1])) throw InputError("collar widths must decrease");
  }

  EndProfile prof;
  prof.basepoint = basepoint;
  std::vector<int> prev_labels;
  for (double w : widths) {
    std::vector<char> mask(space.size(), 0);
    for (VertexId v = 0; v < space.size(); ++v) mask[v] = d[v] < w ? 1 : 0;
    int count = 0;
    auto labels = component_labels(space, mask, &count);
    EndLevel level;
    level.width = w;
    std::vector<int> index(count, -1);
    std::vector<char> meets(count, 0);
    for (VertexId v : ids) {
      if (labels[v] >= 0) meets[labels[v]] = 1;
    }
    for (int c = 0; c < count; ++c) {
      if (meets[c]) {
        index[c] = static_cast<int>(level.parts.size());
        level.parts.emplace_back();
      }
    }
    for (VertexId v = 0; v < space.size(); ++v) {
      if (labels[v] >= 0 && index[labels[v]] >= 0) level.parts[index[labels[v]]].push_back(v);
    }
    if (!prev_labels.empty()) {
      for (const auto& part : level.parts) {
        const int p = prev_labels[part.front()];
        for (VertexId v : part) {
          if (prev_labels[v] != p) prof.nesting_ok = false;
        }
        level.parent.push_back(p);
      }
    }
    prev_labels.assign(space.size(), -1);
    for (std::size_t i = 0; i < level.parts.size(); ++i) {
      for (VertexId v : level.parts[i]) prev_labels[v] = static_cast<int>(i);
    }
    prof.levels.push_back(std::move(level));
  }
  const std::size_t L = prof.levels.size();
  if (L >= 2) {
    const auto& last = prof.levels[L - 1];
    const auto& before = prof.levels[L - 2];
    std::set<int> parents(last.parent.begin(), last.parent.end());
    prof.stabilized = prof.nesting_ok && last.parts.size() == before.parts.size() &&
                      parents.size() == last.parts.size();
  }
  prof.end_count = static_cast<int>(prof.levels.back().parts.size());
  return prof;
}

EndsComponentsReport ends_components_check(const DiscreteSpace& space) {
  if (!space.planar()) throw InputError("ends/components check refuses non-planar construction " + space.label());
  EndsComponentsReport rep;
  ComponentSpace cs = boundary_components(space);
  EndProfile prof = ends(space, deepest_vertex(space));
  rep.components = static_cast<int>(cs.size());
  rep.ends = prof.end_count;
  std::ostringstream msg;
  if (!prof.stabilized) msg << "end count did not stabilize; ";
  if (!cs.registry_match) msg << "boundary registry mismatch: " << cs.detail;

  std::vector<int> owner(space.size(), -1);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (VertexId v : cs.members[i]) owner[v] = static_cast<int>(i);
  }
  std::set<int> hit;
  bool bijective = rep.ends == rep.components;
  for (std::size_t e = 0; e < prof.levels.back().parts.size(); ++e) {
    std::set<int> comps;
    for (VertexId v : prof.levels.back().parts[e]) {
      if (owner[v] >= 0) comps.insert(owner[v]);
    }
    if (comps.size() != 1) {
      bijective = false;
      msg << "end " << e << " meets " << comps.size() << " boundary components; ";
    } else if (!hit.insert(*comps.begin()).second) {
      bijective = false;
      msg << "end " << e << " shares component " << cs.names[*comps.begin()] << "; ";
    }
  }
  if (rep.ends != rep.components) msg << rep.ends << " ends vs " << rep.components << " components; ";
  rep.pass = prof.stabilized && bijective && cs.registry_match;
  rep.detail = msg.str();
  return rep;
}

CircleReport boundary_circle_check(const DiscreteSpace& space, const MarkedSet& component,
                                   std::optional<MetricKind> metric, const SampleSpec& spec) {
  CircleReport rep;
  rep.vertices = component.ids.size();
  for (VertexId v : component.ids) space.check_vertex(v);
  auto in = make_mask(space.size(), component.ids);
  std::map<VertexId, std::vector<std::pair<VertexId, double>>> adj;
  for (VertexId v : component.ids) {
    std::map<VertexId, double> nbrs;
    for (const Neighbor& nb : space.neighbors(v)) {
      if (in[nb.to] && nb.to != v) {
        auto it = nbrs.find(nb.to);
        nbrs[nb.to] = it == nbrs.end() ? nb.length : std::min(it->second, nb.length);
      }
    }
    adj[v] = {nbrs.begin(), nbrs.end()};
  }
  for (const auto& [v, nb] : adj) {
    if (nb.size() != 2) {
      rep.detail = "vertex " + std::to_string(v) + " has " + std::to_string(nb.size()) + " neighbours in the set";
      return rep;
    }
  }
  if (component.ids.size() < 3 || restricted_components(space, component.ids).size() != 1) {
    rep.detail = "set is not a single cycle";
    return rep;
  }
  // walk the cycle from the first listed vertex
  std::vector<VertexId> walk{component.ids.front()};
  std::vector<double> lengths;
  VertexId prev = component.ids.front(), cur = adj[prev][0].first;
  lengths.push_back(adj[prev][0].second);
  while (cur != component.ids.front()) {
    walk.push_back(cur);
    const auto& nb = adj[cur];
    const auto& step = nb[0].first == prev ? nb[1] : nb[0];
    lengths.push_back(step.second);
    prev = cur;
    cur = step.first;
  }
  if (walk.size() != component.ids.size()) {
    rep.detail = "set is not a single cycle";
    return rep;
  }
  rep.is_cycle = true;

  const MetricKind kind = metric.value_or(space.metric());
  SpaceBuilder b;
  b.h(space.h()).label("circle(" + component.name + ")").metric(kind);
  const std::size_t m = walk.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vertex& x = space.vertex(walk[k]);
    b.add_vertex(x.pos, x.side, x.pitch, 0.5 * (lengths[k] + lengths[(k + m - 1) % m]));
  }
  for (std::size_t k = 0; k < m; ++k) {
    b.add_edge(static_cast<VertexId>(k), static_cast<VertexId>((k + 1) % m), lengths[k]);
  }
  MarkedSet circle{"circle", {}, MarkedKind::boundary_component, 0, true};
  for (std::size_t k = 0; k < m; ++k) circle.ids.push_back(static_cast<VertexId>(k));
  b.add_marked(circle);
  DiscreteSpace cyc = std::move(b).build();
  rep.llc1 = llc1_constant(cyc, spec);

  MarkedSet ordered = component;
  ordered.ids = walk;
  ordered.cyclic = true;
  rep.three_point = quasicircle_constant(space, ordered, metric);
  return rep;
}

}  // namespace carpetlab
