#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "carpetlab/constructions.hpp"
#include "carpetlab/mesh_io.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/sampling.hpp"

using namespace carpetlab;

namespace {

DiscreteSpace path_graph(const std::vector<double>& lengths) {
  SpaceBuilder b;
  for (std::size_t i = 0; i <= lengths.size(); ++i) b.add_vertex({static_cast<double>(i), 0.0});
  for (std::size_t i = 0; i < lengths.size(); ++i) b.add_edge(i, i + 1, lengths[i]);
  b.h(1.0);
  return std::move(b).build();
}

VertexId find_vertex(const DiscreteSpace& s, Point p, Side side) {
  for (VertexId v = 0; v < s.size(); ++v) {
    if (euclid(s.vertex(v).pos, p) < 1e-12 && s.vertex(v).side == side) return v;
  }
  FAIL("vertex not found");
  return 0;
}

}  // namespace

TEST_CASE("shortest_dist on tiny graphs") {
  auto s = path_graph({0.25});
  CHECK(shortest_dist(s, 0, 0) == 0.0);
  CHECK(shortest_dist(s, 0, 1) == 0.25);
  auto p = path_graph({1, 2, 3});
  CHECK(shortest_dist(p, 0, 3) == 6.0);
  CHECK(diameter(p) == 6.0);
}

TEST_CASE("slit sides are far apart in the path metric") {
  const double h = 1.0 / 64;
  auto m = gen_Q(1, h);
  const VertexId l = find_vertex(m.space, {0.5, 0.5}, Side::left);
  const VertexId r = find_vertex(m.space, {0.5, 0.5}, Side::right);
  CHECK(std::abs(shortest_dist(m.space, l, r) - 0.5) <= 2 * h);
  CHECK(euclid(project(m, l), project(m, r)) == 0.0);
}

TEST_CASE("balls and annuli") {
  const double h = 1.0 / 64;
  auto m = gen_Q(1, h);
  const VertexId c = find_vertex(m.space, {0.5, 0.5}, Side::left);
  CHECK(ball(m.space, c, 0.0).empty());
  CHECK(ball(m.space, c, 10.0).size() == m.space.size());
  for (VertexId v : ball(m.space, c, 0.2)) {
    const Vertex& x = m.space.vertex(v);
    if (x.side == Side::right) CHECK_FALSE((x.pos.y >= 0.35 && x.pos.y <= 0.65));
  }
  auto big = ball(m.space, c, 0.3);
  auto small = closed_ball(m.space, c, 0.1);
  auto ann = annulus(m.space, c, 0.1, 0.3);
  std::vector<VertexId> diff;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(diff));
  CHECK(ann == diff);
  auto inner = ball(m.space, c, 0.1);
  CHECK(std::includes(big.begin(), big.end(), inner.begin(), inner.end()));
}

TEST_CASE("relative distance conventions") {
  auto p = path_graph({1, 1, 1, 1, 1});
  std::vector<VertexId> a{0}, b{3, 4};
  CHECK(rel_distance(p, a, b).infinite);
  std::vector<VertexId> s1{0, 1}, s2{2, 3};
  auto rd = rel_distance(p, s1, s2);
  CHECK_FALSE(rd.infinite);
  CHECK(rd.value == 1.0);
  std::vector<VertexId> empty;
  CHECK_THROWS_AS(rel_distance(p, empty, b), InputError);
}

TEST_CASE("slits of Q2 are two diameters apart") {
  const double h = 1.0 / 128;
  auto m = gen_Q(2, h);
  std::vector<VertexId> ll, lr;
  for (const Slit& s : m.slits) {
    if (std::abs(s.y0 - 0.125) < 1e-12 && std::abs(s.x - 0.25) < 1e-12) ll = m.space.marked(s.circle).ids;
    if (std::abs(s.y0 - 0.125) < 1e-12 && std::abs(s.x - 0.75) < 1e-12) lr = m.space.marked(s.circle).ids;
  }
  REQUIRE_FALSE(ll.empty());
  REQUIRE_FALSE(lr.empty());
  CHECK(std::abs(rel_distance(m.space, ll, lr).value - 2.0) <= 10 * h);
}

TEST_CASE("restricted components and chains") {
  auto p = path_graph({1, 1, 1, 1, 1});
  std::vector<VertexId> all{0, 1, 2, 3, 4, 5};
  CHECK(restricted_components(p, all).size() == 1);
  std::vector<VertexId> two{0, 5};
  CHECK(restricted_components(p, two).size() == 2);
  std::vector<VertexId> one{2};
  CHECK(epsilon_chain_connected(p, one, 0.1));
  CHECK_FALSE(epsilon_chain_connected(p, two, 1.0));
  CHECK(epsilon_chain_connected(p, two, 5.0));

  const double h = 1.0 / 32;
  auto m = gen_Q(1, h);
  const VertexId c = find_vertex(m.space, {0.25, 0.5}, Side::none);
  auto ann = annulus(m.space, c, 0.1, 0.3);
  CHECK(restricted_components(m.space, ann).size() == 1);
  CHECK(epsilon_chain_connected(m.space, m.space.marked(m.slits[0].circle).ids, 3 * h));
}

TEST_CASE("metric axioms on sampled triples") {
  auto m = gen_Q(2, 1.0 / 16);
  Rng rng(7);
  std::vector<std::vector<double>> rows(m.space.size());
  auto row = [&](VertexId v) -> const std::vector<double>& {
    if (rows[v].empty()) rows[v] = distances_from(m.space, v);
    return rows[v];
  };
  for (int t = 0; t < 1000; ++t) {
    const auto u = static_cast<VertexId>(rng.index(m.space.size()));
    const auto v = static_cast<VertexId>(rng.index(m.space.size()));
    const auto w = static_cast<VertexId>(rng.index(m.space.size()));
    CHECK(row(u)[w] <= row(u)[v] + row(v)[w]);
    CHECK(row(u)[v] == row(v)[u]);
    CHECK((row(u)[v] == 0.0) == (u == v));
  }
}

TEST_CASE("epsilon nets cover and separate") {
  auto m = gen_Q(1, 1.0 / 16);
  const double eps = 0.2;
  auto net = epsilon_net(m.space, eps);
  auto d = distances_from_set(m.space, net.ids);
  for (double x : d) CHECK(x <= eps);
  for (std::size_t i = 0; i < net.ids.size(); ++i) {
    auto di = distances_from(m.space, net.ids[i]);
    for (std::size_t j = i + 1; j < net.ids.size(); ++j) CHECK(di[net.ids[j]] >= eps);
  }
}

TEST_CASE("mesh JSON round trip") {
  auto m = gen_Q(1, 1.0 / 16);
  auto back = mesh_from_json(mesh_to_json(m));
  CHECK(back.space.size() == m.space.size());
  CHECK(back.space.edges().size() == m.space.edges().size());
  CHECK(back.slits.size() == m.slits.size());
  CHECK(mesh_to_json(back) == mesh_to_json(m));
  CHECK_THROWS_AS(space_from_json(nlohmann::json::array()), InputError);
  CHECK_THROWS_AS(space_from_json({{"h", 0.5}, {"vertices", {{{"id", 3}, {"x", 0}, {"y", 0}}}}, {"edges", nlohmann::json::array()}}),
                  InputError);
}
