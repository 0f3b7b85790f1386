#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "carpetlab/boundary.hpp"
#include "carpetlab/constructions.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/projection.hpp"

using namespace carpetlab;

TEST_CASE("boundary components of slit domains") {
  const std::size_t expected[] = {1, 2, 6};
  for (int n = 0; n <= 2; ++n) {
    auto m = gen_Q(n, 1.0 / 64);
    auto cs = boundary_components(m.space);
    CHECK(cs.registry_match);
    CHECK(cs.size() == expected[n]);
    CHECK(boundary_components(m.space, 2.0).size() == cs.size());
    CHECK(boundary_components(m.space, 4.0).size() == cs.size());
  }
  auto q = gen_Q_inf(2, 1.0 / 128);
  auto cs = boundary_components(q.space);
  CHECK(cs.registry_match);
  CHECK(cs.size() == slits_Q_inf(2).size() + 1);
}

TEST_CASE("ends match components") {
  for (int n = 0; n <= 2; ++n) {
    auto m = gen_Q(n, 1.0 / 64);
    auto rep = ends_components_check(m.space);
    CHECK(rep.pass);
    CHECK(rep.ends == rep.components);
  }
  auto disks = gen_circle_domain({{{0.3, 0.3}, 0.1}, {{0.7, 0.3}, 0.12}, {{0.5, 0.72}, 0.15}}, 1.0 / 64);
  auto rep = ends_components_check(disks);
  CHECK(rep.ends == 4);
  CHECK(rep.components == 4);
}

TEST_CASE("end profiles") {
  auto sq = gen_Q(0, 1.0 / 64);
  VertexId centre = 0;
  for (VertexId v = 0; v < sq.space.size(); ++v) {
    if (euclid(sq.space.vertex(v).pos, {0.5, 0.5}) < 1e-12) centre = v;
  }
  auto p = ends(sq.space, centre);
  CHECK(p.stabilized);
  CHECK(p.end_count == 1);
  CHECK(p.nesting_ok);
  for (std::size_t i = 1; i < p.levels.size(); ++i) {
    CHECK(p.levels[i].width < p.levels[i - 1].width);
    CHECK(p.levels[i].parent.size() == p.levels[i].parts.size());
  }

  auto q1 = gen_Q(1, 1.0 / 64);
  VertexId base = 0;
  for (VertexId v = 0; v < q1.space.size(); ++v) {
    if (euclid(q1.space.vertex(v).pos, {0.25, 0.5}) < 1e-12) base = v;
  }
  auto e = ends(q1.space, base);
  CHECK(e.stabilized);
  CHECK(e.end_count == 2);

  auto cyl = gen_cylinder(32);
  CHECK(ends(cyl, deepest_vertex(cyl)).end_count == 2);
}

TEST_CASE("non-planar spaces are refused") {
  SpaceBuilder b;
  b.add_vertex({0, 0});
  b.add_vertex({1, 0});
  b.add_edge(0, 1, 1.0);
  b.h(1.0).planar(false);
  auto s = std::move(b).build();
  CHECK_THROWS_AS(ends(s, 0), InputError);
}

TEST_CASE("rank by peeling") {
  auto q = gen_Q(2, 1.0 / 64);
  CHECK(rank(component_space(q)) == 0);
  for (int N = 2; N <= 3; ++N) CHECK(rank(component_space(gen_Q_inf(N, std::ldexp(1.0, -(N + 4))))) == 1);
  auto chain = synthetic_chain(2, 3);
  CHECK(rank(chain) == 2);

  // relabelling components leaves the rank alone
  ComponentSpace flipped = chain;
  const int n = static_cast<int>(chain.size());
  std::reverse(flipped.names.begin(), flipped.names.end());
  for (auto& [a, b] : flipped.relations) a = n - 1 - a, b = n - 1 - b;
  CHECK(rank(flipped) == 2);

  ComponentSpace cyc = chain;
  cyc.relations.push_back({cyc.relations.back().second, cyc.relations.back().first});
  CHECK_THROWS_AS(rank(cyc), InputError);
  CHECK_THROWS_AS(declare_relations(cyc, {{"nope", "outer"}}), InputError);
}

TEST_CASE("boundary circles") {
  auto q1 = gen_Q(1, 1.0 / 32);
  const MarkedSet& slit = q1.space.marked(q1.slits[0].circle);
  auto rep = boundary_circle_check(q1.space, slit, std::nullopt, SampleSpec{});
  CHECK(rep.is_cycle);
  CHECK(rep.vertices == 2 * 15 + 2);
  CHECK(rep.llc1.value <= 2.0);

  auto sq = gen_Q(0, 1.0 / 16);
  auto outer = boundary_circle_check(sq.space, sq.space.marked("outer"), MetricKind::euclidean, SampleSpec{});
  CHECK(outer.is_cycle);
  CHECK(outer.three_point.value <= 1.3);

  MarkedSet arc = slit;
  arc.ids.resize(arc.ids.size() / 2);
  CHECK_FALSE(boundary_circle_check(q1.space, arc, std::nullopt, SampleSpec{}).is_cycle);
}

TEST_CASE("pulled-back nets") {
  auto a = gen_slit_carpet(2, 1.0 / 32);
  auto net = lattice_net(a, 4);
  CHECK(std::is_sorted(net.begin(), net.end(), [](const NetPoint& x, const NetPoint& y) {
    return std::tie(x.i, x.j, x.side) < std::tie(y.i, y.j, y.side);
  }));
  auto self = compare_nets(a, a, 4);
  CHECK(self.same_points);
  CHECK(self.max_diff == 0.0);
}

TEST_CASE("projection of balls") {
  auto q = gen_Q_inf(2, 1.0 / 64);
  for (VertexId p : {VertexId{0}, static_cast<VertexId>(q.space.size() / 2)}) {
    auto inc = inclusion_check(q, p, 0.2);
    CHECK(inc.outer_ok);
    CHECK(inc.c >= 0.05);
    auto cover = preimage_cover(q, project(q, p), 0.2);
    CHECK(cover.balls >= 1);
    CHECK(cover.balls <= 8);
  }
}
