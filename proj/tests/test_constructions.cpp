#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "carpetlab/constructions.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/sampling.hpp"

using namespace carpetlab;

namespace {

// independent enumeration: every dyadic square of side 2^-k, k < n, carries a
// vertical slit through its centre of half its side
std::set<std::tuple<double, double, double>> dyadic_slits(int n) {
  std::set<std::tuple<double, double, double>> out;
  for (int k = 0; k < n; ++k) {
    const double s = std::ldexp(1.0, -k);
    for (int i = 0; i < (1 << k); ++i) {
      for (int j = 0; j < (1 << k); ++j) out.insert({(i + 0.5) * s, (j + 0.25) * s, (j + 0.75) * s});
    }
  }
  return out;
}

std::set<std::tuple<double, double, double>> as_set(const std::vector<Slit>& slits) {
  std::set<std::tuple<double, double, double>> out;
  for (const Slit& s : slits) out.insert({s.x, s.y0, s.y1});
  return out;
}

}  // namespace

TEST_CASE("slit counts follow the recurrence") {
  CHECK(gen_Q(0, 1.0 / 16).slits.empty());
  auto q1 = gen_Q(1, 1.0 / 16);
  REQUIRE(q1.slits.size() == 1);
  CHECK(q1.slits[0].x == 0.5);
  CHECK(q1.slits[0].y0 == 0.25);
  CHECK(q1.slits[0].y1 == 0.75);
  CHECK(gen_Q(3, 1.0 / 64).slits.size() == 21);
  for (int n = 0; n < 6; ++n) {
    CHECK(slits_Q(n + 1).size() == slits_Q(n).size() + (std::size_t{1} << (2 * n)));
    CHECK(as_set(slits_Q(n)) == dyadic_slits(n));
  }
}

TEST_CASE("resolution policy") {
  CHECK_THROWS_AS(gen_Q(3, 1.0 / 16), ResolutionError);
  CHECK_THROWS_AS(gen_Q(1, 0.3), InputError);
  CHECK_NOTHROW(gen_Q(3, 1.0 / 32));
}

TEST_CASE("Q_inf truncations") {
  CHECK(gen_R(1, 1.0 / 32).slits.size() == 6);
  auto a = gen_Q_inf(0, 1.0 / 16), b = gen_Q(1, 1.0 / 16);
  CHECK(a.space.size() == b.space.size());
  CHECK(a.space.edges().size() == b.space.edges().size());
  double shortest = 1.0;
  for (const Slit& s : slits_Q_inf(2)) shortest = std::min(shortest, s.length());
  CHECK(shortest == 1.0 / 32);
}

TEST_CASE("slit carpet levels") {
  auto c1 = gen_slit_carpet(1, 1.0 / 16);
  auto q1 = gen_Q(1, 1.0 / 16);
  CHECK(c1.space.size() == q1.space.size());
  CHECK(c1.space.edges().size() == q1.space.edges().size());
  CHECK(gen_slit_carpet(2, 1.0 / 32).slits.size() == 5);
  for (int n = 1; n <= 3; ++n) {
    const double h = 1.0 / 64;
    auto c = gen_slit_carpet(n, h);
    VertexId lo = 0, hi = 0;
    for (VertexId v = 0; v < c.space.size(); ++v) {
      const Point p = c.space.vertex(v).pos;
      if (euclid(p, {0.5, 0.25}) < 1e-12) lo = v;
      if (euclid(p, {0.5, 0.75}) < 1e-12) hi = v;
    }
    CHECK(std::abs(shortest_dist(c.space, lo, hi) - 0.5) <= 2 * h);
  }
}

TEST_CASE("projection is 1-Lipschitz") {
  auto m = gen_Q(2, 1.0 / 32);
  for (const Edge& e : m.space.edges()) CHECK(euclid(project(m, e.u), project(m, e.v)) <= e.length + 1e-12);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto u = static_cast<VertexId>(rng.index(m.space.size()));
    auto d = distances_from(m.space, u);
    for (int k = 0; k < 5; ++k) {
      const auto v = static_cast<VertexId>(rng.index(m.space.size()));
      CHECK(euclid(project(m, u), project(m, v)) <= d[v] + 1e-12);
    }
  }
}

TEST_CASE("slit circles are doubled segments") {
  auto m = gen_Q(1, 1.0 / 16);
  const MarkedSet& c = m.space.marked(m.slits[0].circle);
  CHECK(c.cyclic);
  int left = 0, right = 0, tips = 0;
  for (VertexId v : c.ids) {
    const Side s = m.space.vertex(v).side;
    left += s == Side::left;
    right += s == Side::right;
    tips += s == Side::none;
  }
  CHECK(tips == 2);
  CHECK(left == right);
  CHECK(c.ids.size() == 2 * 7 + 2);
}

TEST_CASE("rescaled corners") {
  auto q = gen_Q_inf(3, 1.0 / 64);
  auto same = rescaled_corner(q, 0);
  CHECK(same.space.size() == q.space.size());
  auto c = rescaled_corner(q, 1);
  double xmax = 0, ymax = 0;
  for (const Vertex& v : c.space.vertices()) xmax = std::max(xmax, v.pos.x), ymax = std::max(ymax, v.pos.y);
  CHECK(xmax == 1.0);
  CHECK(ymax == 1.0);
  auto pattern = as_set(slits_Q(2));
  auto have = as_set(c.slits);
  CHECK(std::includes(have.begin(), have.end(), pattern.begin(), pattern.end()));
  for (int n = 0; n <= 2; ++n) {
    const double d = diameter(rescaled_corner(q, n).space);
    CHECK(d >= 1.0);
    CHECK(d <= 3.0);
  }
}

TEST_CASE("circle domains and curves") {
  auto sq = gen_circle_domain({}, 1.0 / 16);
  CHECK(sq.marked().size() == 1);
  auto two = gen_circle_domain({{{0.3, 0.5}, 0.1}, {{0.7, 0.5}, 0.1}}, 1.0 / 64);
  auto rd = rel_distance(two, two.marked("disk0").ids, two.marked("disk1").ids);
  CHECK(std::abs(rd.value - 1.0) <= 10.0 / 64);
  auto circle = gen_round_circle(64);
  CHECK(circle.size() == 64);
  CHECK(circle.marked("circle").cyclic);
  auto cyl = gen_cylinder(16);
  CHECK(cyl.has_marked("bottom"));
  CHECK(cyl.has_marked("top"));
}
