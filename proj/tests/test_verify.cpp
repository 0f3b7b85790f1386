#include <doctest.h>

#include "carpetlab/sampling.hpp"
#include "carpetlab/verify.hpp"

using namespace carpetlab;
using nlohmann::json;

namespace {

json q(int n, int m) { return {{"family", "Q"}, {"gen", n}, {"res", m}}; }

json small_manifest() {
  return {{"seed", 9},
          {"entries",
           {{{"construction", q(1, 5)}, {"check", "llc1"}, {"params", {{"samples", 15}}}, {"expected", {nullptr, 3.6}}},
            {{"construction", q(2, 5)}, {"check", "boundary_components"}, {"expected", "6"}},
            {{"construction", {{"family", "two_squares"}}}, {"check", "comparison"}, {"expected", "pass"}},
            {{"construction", q(1, 6)}, {"check", "ahlfors:2"},
             {"params", {{"samples", 32}, {"r_min", 0.0625}, {"r_max", 0.5}}}}}}};
}

}  // namespace

TEST_CASE("construction keys") {
  CHECK(construction_key(q(2, 7)) == "Q(2,2^-7)");
  CHECK(construction_key({{"family", "R"}, {"gen", 3}, {"res", 8}}) == "Qinf(3,2^-8)");
  CHECK(construction_key({{"family", "fill"}, {"base", q(2, 7)}}) == "fill(Q(2,2^-7))");
  CHECK_THROWS_AS(construction_key({{"family", "torus"}}), UsageError);
  CHECK_THROWS_AS(construction_key({{"family", "Q"}, {"gen", 1}}), UsageError);
}

TEST_CASE("empty and trivial manifests") {
  auto empty = verify({{"entries", json::array()}});
  CHECK(empty.exit_status == 0);
  CHECK(empty.rows.empty());
  CHECK(rows_to_csv(empty.rows) ==
        "construction,check,seed,value,expected,tolerance,pass,samples,r_min,r_max,paper_ref,provenance,detail\n");

  auto one = verify({{"entries", {{{"construction", q(1, 4)}, {"check", "slit_count"}, {"expected", 1},
                                   {"tolerance", "absolute"}}}}});
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].pass);
  CHECK(one.rows[0].value == "1");
  CHECK(one.exit_status == 0);

  auto wrong = verify({{"entries", {{{"construction", q(1, 4)}, {"check", "slit_count"}, {"expected", 2}}}}});
  CHECK(wrong.exit_status == 1);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(verify(json::array()), UsageError);
  CHECK_THROWS_AS(verify({{"entries", {{{"construction", q(1, 4)}, {"check", "nonsense"}}}}}), UsageError);
  CHECK_THROWS_AS(verify({{"entries", {{{"check", "slit_count"}}}}}), UsageError);
  CHECK_THROWS_AS(verify({{"entries", {{{"construction", q(1, 4)}, {"check", "slit_count"}, {"expected", 1},
                                        {"tolerance", "fuzzy"}}}}}),
                  UsageError);
}

TEST_CASE("input errors become error rows") {
  auto res = verify({{"entries", {{{"construction", q(3, 3)}, {"check", "slit_count"}, {"expected", 21}}}}});
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].value == "error");
  CHECK_FALSE(res.rows[0].pass);
  CHECK(res.exit_status == 1);
}

TEST_CASE("judging") {
  Row r;
  r.value = "1.1";
  judge(r, {{"expected", 1.0}, {"tolerance", "ratio"}, {"tol", 0.15}});
  CHECK(r.pass);
  judge(r, {{"expected", 1.0}, {"tolerance", "absolute"}, {"tol", 0.05}});
  CHECK_FALSE(r.pass);
  judge(r, {{"expected", {nullptr, 2.0}}});
  CHECK(r.pass);
  judge(r, {{"expected", {1.2, nullptr}}});
  CHECK_FALSE(r.pass);
  r.value = "fail";
  judge(r, {{"expected", "fail"}});
  CHECK(r.pass);
  judge(r, {{"expected", {nullptr, 2.0}}});
  CHECK_FALSE(r.pass);
  r.value = "inf";
  judge(r, {{"expected", {0.5, nullptr}}});
  CHECK(r.pass);
}

TEST_CASE("CSV quoting and number format") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(1.0 / 3) == "0.3333333333");
  Row r;
  r.construction = "Q(1,2^-4)";
  r.check = "llc1";
  r.detail = "say \"hi\"";
  auto csv = rows_to_csv({r});
  CHECK(csv.find("\"Q(1,2^-4)\",llc1,") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
}

TEST_CASE("report merging") {
  auto res = verify(small_manifest());
  auto rows = rows_from_json(rows_to_json(res.rows));
  CHECK(rows_to_csv(merge_rows({rows})) == rows_to_csv(res.rows));
  CHECK(rows_to_csv(merge_rows({rows, rows})) == rows_to_csv(res.rows));
  auto other = rows;
  other[0].value = "42";
  CHECK_THROWS_AS(merge_rows({rows, other}), UsageError);
  CHECK_THROWS_AS(rows_from_json({{"rows", {{{"check", "x"}}}}}), UsageError);
  CHECK_THROWS_AS(rows_from_json(json::array()), UsageError);
}

TEST_CASE("plots") {
  auto res = verify(small_manifest());
  const Row* fit = nullptr;
  for (const Row& r : res.rows) {
    if (r.check == "ahlfors:2") fit = &r;
  }
  REQUIRE(fit != nullptr);
  REQUIRE(fit->series.size() >= 2);
  const std::string svg = loglog_svg(*fit);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("slope=") != std::string::npos);
  CHECK(scatter_svg(res.rows).find("<circle") != std::string::npos);
  CHECK(loglog_svg(Row{}).empty());
}

TEST_CASE("worker count does not change the report") {
  set_default_threads(1);
  const std::string one = rows_to_csv(verify(small_manifest()).rows);
  set_default_threads(4);
  const std::string four = rows_to_csv(verify(small_manifest()).rows);
  set_default_threads(0);
  CHECK(one == four);
  CHECK(rows_to_csv(verify(small_manifest(), 77).rows) != one);
}
