#include <doctest.h>

#include <cmath>

#include "carpetlab/constructions.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/predicates.hpp"

using namespace carpetlab;

namespace {

DiscreteSpace scaled(const DiscreteSpace& s, double f) {
  SpaceBuilder b;
  for (const Vertex& v : s.vertices()) b.add_vertex(v.pos, v.side, v.pitch * f, v.mass * f * f);
  for (const Edge& e : s.edges()) b.add_edge(e.u, e.v, e.length * f);
  for (const auto& [name, set] : s.marked()) b.add_marked(set);
  b.h(s.h() * f).metric(s.metric()).planar(s.planar());
  return std::move(b).build();
}

SampleSpec spec(int samples, std::uint64_t seed = 5) {
  SampleSpec s;
  s.samples = samples;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("grid search values") {
  CHECK(grid_value(0.5, 1.05, 1e3, false) == 1.0);
  CHECK(grid_value(1.0, 1.05, 1e3, true) == doctest::Approx(1.05));
  bool capped = false;
  CHECK(grid_value(kInf, 1.05, 1e3, false, &capped) == 1e3);
  CHECK(capped);
  const double g = grid_value(3.0, 1.05, 1e3, false);
  CHECK(g >= 3.0);
  CHECK(g / 1.05 < 3.0);
}

TEST_CASE("LLC of a round cycle") {
  auto c = gen_round_circle(256, MetricKind::path);
  auto l1 = llc1_constant(c, spec(30));
  auto l2 = llc2_constant(c, spec(30));
  CHECK(l1.value == 1.0);
  CHECK(l2.value <= 1.05 * 1.05);
  auto a = allc_constant(c, spec(20));
  CHECK(a.capped);
  CHECK(a.value_str() == "fail");
}

TEST_CASE("plain square is ALLC with a small constant") {
  auto sq = gen_Q(0, 1.0 / 16).space;
  SampleSpec s = spec(300);
  auto coarse = allc_constant(sq, s);
  CHECK_FALSE(coarse.capped);
  CHECK(coarse.value <= 4.0);
  auto fine = allc_constant(gen_Q(0, 1.0 / 64).space, spec(60));
  CHECK(fine.value <= 4.0);
}

TEST_CASE("constants are scale invariant") {
  auto m = gen_Q(1, 1.0 / 16);
  auto big = scaled(m.space, 3.0);
  CHECK(llc1_constant(m.space, spec(25)).value == llc1_constant(big, spec(25)).value);
  CHECK(llc2_constant(m.space, spec(25)).value == llc2_constant(big, spec(25)).value);
  CHECK(allc_constant(m.space, spec(25)).value == allc_constant(big, spec(25)).value);
  auto comps = marked_components(gen_Q(2, 1.0 / 16).space, {MarkedKind::slit});
  auto q2 = gen_Q(2, 1.0 / 16).space;
  CHECK(uniform_rel_sep(q2, comps).value == doctest::Approx(uniform_rel_sep(scaled(q2, 0.5), comps).value));
}

TEST_CASE("more samples never loosen a max-type constant") {
  auto m = gen_Q_inf(2, 1.0 / 32);
  CHECK(llc2_constant(m.space, spec(40)).value >= llc2_constant(m.space, spec(20)).value);
  CHECK(allc_constant(m.space, spec(40)).value >= allc_constant(m.space, spec(20)).value);
}

TEST_CASE("Ahlfors slope of the square") {
  auto sq = gen_Q(0, 1.0 / 128).space;
  SampleSpec s = spec(128);
  s.relative = false;
  s.r_min = 1.0 / 32;
  s.r_max = 0.5;
  auto rep = ahlfors_fit(sq, 2.0, s);
  CHECK(rep.value >= 1.95);
  CHECK(rep.value <= 2.05);
  CHECK_FALSE(rep.series.empty());
  s.r_min = 1.0 / 256;
  CHECK_THROWS_AS(ahlfors_fit(sq, 2.0, s), InputError);
}

TEST_CASE("homogeneity counts") {
  auto none = homogeneity_counts({}, {}, 1.0, 6);
  for (int n : none) CHECK(n == 0);
  // one slit of diameter 1/2 and four of 1/4; 2^-k r < diam <= 2^-k+1 r
  auto c = homogeneity_counts({0.5, 0.25, 0.25, 0.25, 0.25}, {1, 1, 1, 1, 1}, 1.0, 5);
  CHECK(c[1] == 0);
  CHECK(c[2] == 1);
  CHECK(c[3] == 4);
  auto reg = registry_homogeneity_counts(slits_Q(2), false, {0.5, 0.5}, 1.0, 5);
  CHECK(reg == c);
  auto sums = planarity_sums(c, 2.0);
  CHECK(sums.back() == doctest::Approx(1.0 / 16 + 4.0 / 64));
}

TEST_CASE("porosity") {
  auto q1 = gen_Q(1, 1.0 / 64);
  SampleSpec s = spec(20);
  s.relative = false;
  s.r_min = 1.0 / 16;
  s.r_max = 0.5;
  auto slit = porosity_constant(q1.space, q1.space.marked(q1.slits[0].circle).ids, s);
  CHECK(slit.value <= 8.0);
  CHECK(slit.extra.at("porous") == 1.0);
  auto sq = gen_Q(0, 1.0 / 256);
  VertexId mid = 0;
  for (VertexId v = 0; v < sq.space.size(); ++v) {
    if (euclid(sq.space.vertex(v).pos, {0.5, 0.5}) < 1e-12) mid = v;
  }
  std::vector<VertexId> point{mid};
  s.r_min = 1.0 / 32;
  auto p = porosity_constant(sq.space, point, s);
  CHECK(p.value <= 2.5);
  CHECK(box_count_slope(q1.space, q1.space.marked(q1.slits[0].circle).ids, 3, 6) <= 1.1);
}

TEST_CASE("three-point constants") {
  auto round = gen_round_circle(64);
  CHECK(quasicircle_constant(round, round.marked("circle")).value == doctest::Approx(1.0).epsilon(0.05));
  auto ell = gen_ellipse(64, 4.0, 1.0);
  CHECK(quasicircle_constant(ell, ell.marked("circle")).value > 1.5);
  auto q1 = gen_Q(1, 1.0 / 128);
  CHECK(quasicircle_constant(q1.space, q1.space.marked(q1.slits[0].circle)).value <= 1.3);
  MarkedSet tiny{"tiny", {0, 1}, MarkedKind::generic, -1, true};
  CHECK_THROWS_AS(quasicircle_constant(round, tiny), InputError);
}

TEST_CASE("uniform relative separation") {
  SpaceBuilder b;
  b.add_vertex({0, 0});
  b.add_vertex({1, 0});
  b.add_vertex({2, 0});
  b.add_edge(0, 1, 1);
  b.add_edge(1, 2, 1);
  b.h(1);
  auto line = std::move(b).build();
  auto rep = uniform_rel_sep(line, {{0}, {2}});
  CHECK(rep.infinite);
  auto q = gen_Q_inf(2, 1.0 / 128);
  CHECK(uniform_rel_sep(q.space, marked_components(q.space, {MarkedKind::slit})).value >= 0.5);
}
