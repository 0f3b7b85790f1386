#include "carpetlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "carpetlab/mesh_io.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/predicates.hpp"
#include "carpetlab/projection.hpp"
#include "carpetlab/sampling.hpp"

namespace carpetlab {

using nlohmann::json;

namespace {

template <typename T>
T get(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad parameter '") + key + "': " + e.what());
  }
}

template <typename T>
T need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad '") + key + "': " + e.what());
  }
}

std::string pow2(int m) { return "2^-" + std::to_string(m); }

double res_h(const json& c) { return std::ldexp(1.0, -need<int>(c, "res")); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Disk> parse_disks(const json& c) {
  std::vector<Disk> disks;
  if (c.contains("disks")) {
    for (const json& d : c.at("disks")) {
      if (!d.is_array() || d.size() != 3) throw UsageError("disks are [x, y, radius] triples");
      disks.push_back({{d[0].get<double>(), d[1].get<double>()}, d[2].get<double>()});
    }
  } else {
    disks = {{{0.3, 0.3}, 0.1}, {{0.7, 0.3}, 0.12}, {{0.5, 0.72}, 0.15}};
  }
  return disks;
}

bool is_mesh_family(const std::string& f) {
  return f == "Q" || f == "Qinf" || f == "R" || f == "carpet" || f == "square" || f == "corner";
}

SlitDomainMesh make_mesh(const json& c) {
  const std::string f = need<std::string>(c, "family");
  const double h = res_h(c);
  if (f == "Q") return gen_Q(need<int>(c, "gen"), h);
  if (f == "Qinf" || f == "R") return gen_Q_inf(need<int>(c, "gen"), h);
  if (f == "carpet") return gen_slit_carpet(need<int>(c, "gen"), h);
  if (f == "square") return gen_Q(0, h);
  if (f == "corner") return rescaled_corner(gen_Q_inf(need<int>(c, "gen"), h), need<int>(c, "n"));
  throw UsageError("unknown mesh family '" + f + "'");
}

std::string cache_name(const std::string& key) {
  std::string out;
  for (char ch : key) out.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  return out + ".json";
}

SlitDomainMesh cached_mesh(const json& c, const std::string& cache_dir) {
  if (cache_dir.empty()) return make_mesh(c);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(cache_dir) / cache_name(construction_key(c));
  if (fs::exists(path)) return mesh_from_json(read_json_file(path.string()));
  SlitDomainMesh mesh = make_mesh(c);
  fs::create_directories(cache_dir);
  write_json_file(path.string(), mesh_to_json(mesh));
  return mesh;
}

SampleSpec sample_spec(const json& p, std::uint64_t seed, bool relative_default) {
  SampleSpec s;
  s.seed = seed;
  s.samples = get<int>(p, "samples", s.samples);
  s.pairs = get<int>(p, "pairs", s.pairs);
  s.r_min = get<double>(p, "r_min", s.r_min);
  s.r_max = get<double>(p, "r_max", s.r_max);
  s.relative = get<bool>(p, "relative", relative_default);
  s.radii = get<int>(p, "radii", s.radii);
  s.cap = get<double>(p, "cap", s.cap);
  return s;
}

void fill_from(Row& row, const ConstantReport& rep) {
  row.value = rep.value_str();
  row.samples = rep.samples;
  row.r_min = rep.r_min;
  row.r_max = rep.r_max;
  row.paper_ref = rep.paper_ref;
  row.series = rep.series;
  std::ostringstream d;
  if (rep.skipped) d << "skipped=" << rep.skipped << " ";
  for (const auto& [k, v] : rep.extra) d << k << "=" << format_number(v) << " ";
  row.detail = d.str();
  if (!row.detail.empty()) row.detail.pop_back();
}

const SlitDomainMesh& need_mesh(const Subject& s) {
  if (!s.mesh) throw InputError("check needs a slit-domain construction");
  return *s.mesh;
}

const GluedSpace& need_glued(const Subject& s) {
  if (!s.glued) throw InputError("check needs a glued construction");
  return *s.glued;
}

MarkedSet resolve_set(const Subject& s, const std::string& name) {
  if (name.rfind("slit", 0) == 0 && s.mesh && name.size() > 4 &&
      std::all_of(name.begin() + 4, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    const auto k = static_cast<std::size_t>(std::stoul(name.substr(4)));
    if (k >= s.mesh->slits.size()) throw InputError("no slit " + name);
    return s.space.marked(s.mesh->slits[k].circle);
  }
  if (name == "point") {
    VertexId best = 0;
    double bd = kInf;
    for (VertexId v = 0; v < s.space.size(); ++v) {
      const double d = euclid(s.space.vertex(v).pos, {0.5, 0.5});
      if (d < bd) {
        bd = d;
        best = v;
      }
    }
    return MarkedSet{"point", {best}, MarkedKind::generic, -1, false};
  }
  if (!s.space.has_marked(name)) throw InputError("no marked set '" + name + "'");
  return s.space.marked(name);
}

std::vector<std::vector<VertexId>> separation_components(const Subject& s) {
  auto comps = marked_components(s.space, {MarkedKind::slit});
  if (comps.size() >= 2) return comps;
  comps.clear();
  for (const auto& [name, set] : s.space.marked()) {
    if (set.kind == MarkedKind::boundary_component && name != "outer") comps.push_back(set.ids);
  }
  return comps;
}

}  // namespace

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string construction_key(const json& c) {
  const std::string f = need<std::string>(c, "family");
  if (f == "Q" || f == "Qinf" || f == "R" || f == "carpet") {
    return (f == "R" ? std::string("Qinf") : f) + "(" + std::to_string(need<int>(c, "gen")) + "," +
           pow2(need<int>(c, "res")) + ")";
  }
  if (f == "square") return "square(" + pow2(need<int>(c, "res")) + ")";
  if (f == "corner") {
    return "corner(" + std::to_string(need<int>(c, "gen")) + "," + std::to_string(need<int>(c, "n")) + "," +
           pow2(need<int>(c, "res")) + ")";
  }
  if (f == "round" || f == "cycle" || f == "cylinder") return f + "(" + std::to_string(need<int>(c, "m")) + ")";
  if (f == "ellipse") {
    return "ellipse(" + std::to_string(need<int>(c, "m")) + "," + format_number(need<double>(c, "a")) + "," +
           format_number(need<double>(c, "b")) + ")";
  }
  if (f == "circles") {
    std::string s = "circles(";
    for (const Disk& d : parse_disks(c)) {
      s += format_number(d.center.x) + ":" + format_number(d.center.y) + ":" + format_number(d.radius) + ";";
    }
    return s + pow2(need<int>(c, "res")) + ")";
  }
  if (f == "two_squares") return "two_squares";
  if (f == "fill") return "fill(" + construction_key(need<json>(c, "base")) + ")";
  if (f == "random_glue") return "random_glue(" + std::to_string(need<std::uint64_t>(c, "seed")) + ")";
  if (f == "registry") return "registry(Qinf," + std::to_string(need<int>(c, "gen")) + ")";
  if (f == "chain") {
    return "chain(" + std::to_string(get<int>(c, "limits", 2)) + "," + std::to_string(get<int>(c, "leaves", 3)) + ")";
  }
  if (f == "file") return "file(" + need<std::string>(c, "path") + ")";
  throw UsageError("unknown construction family '" + f + "'");
}

std::shared_ptr<Subject> build_subject(const json& c, const std::string& cache_dir) {
  auto s = std::make_shared<Subject>();
  s->key = construction_key(c);
  const std::string f = need<std::string>(c, "family");
  if (is_mesh_family(f)) {
    s->mesh = cached_mesh(c, cache_dir);
    s->space = s->mesh->space;
  } else if (f == "round") {
    s->space = gen_round_circle(need<int>(c, "m"));
  } else if (f == "cycle") {
    s->space = gen_round_circle(need<int>(c, "m"), MetricKind::path);
  } else if (f == "ellipse") {
    s->space = gen_ellipse(need<int>(c, "m"), need<double>(c, "a"), need<double>(c, "b"));
  } else if (f == "cylinder") {
    s->space = gen_cylinder(need<int>(c, "m"));
  } else if (f == "circles") {
    s->space = gen_circle_domain(parse_disks(c), res_h(c));
  } else if (f == "two_squares" || f == "random_glue" || f == "fill") {
    if (f == "two_squares") s->instance = two_squares_instance();
    else if (f == "random_glue") s->instance = random_instance(need<std::uint64_t>(c, "seed"));
    else s->instance = fill_slits_instance(cached_mesh(need<json>(c, "base"), cache_dir));
    s->glued = glue(*s->instance);
    s->space = s->glued->space;
  } else if (f == "registry") {
    s->registry = slits_Q_inf(need<int>(c, "gen"));
    s->has_space = false;
  } else if (f == "chain") {
    s->declared = synthetic_chain(get<int>(c, "limits", 2), get<int>(c, "leaves", 3));
    s->has_space = false;
  } else if (f == "file") {
    s->mesh = mesh_from_json(read_json_file(need<std::string>(c, "path")));
    s->space = s->mesh->space;
  } else {
    throw UsageError("unknown construction family '" + f + "'");
  }
  return s;
}

Row run_check(const Subject& s, const std::string& check, const json& params, std::uint64_t seed) {
  Row row;
  row.construction = s.key;
  row.check = check;
  row.seed = seed;
  const auto parts = split(check, ':');
  const std::string& name = parts[0];
  auto arg = [&](std::size_t i, const std::string& fallback) { return parts.size() > i ? parts[i] : fallback; };
  static const std::vector<std::string> known = {
      "slit_count", "vertex_count", "diameter", "doubling", "llc1", "llc2", "allc", "allc_diameter",
      "ahlfors", "relsep", "porosity", "quasicircle", "nk", "planarity_sum", "boundary_components",
      "ends", "ends_components", "rank", "circle_check", "comparison", "local_isometry", "admissible",
      "flatness", "bilipschitz", "net_agreement", "inclusion", "cover"};
  if (std::find(known.begin(), known.end(), name) == known.end()) throw UsageError("unknown check '" + name + "'");
  if (s.has_space == false && name != "nk" && name != "planarity_sum" && name != "rank") {
    throw UsageError("check '" + name + "' needs a space, but " + s.key + " is declared structure only");
  }

  try {
    if (name == "slit_count") {
      row.value = std::to_string(need_mesh(s).slits.size());
      row.paper_ref = "slit domain Q_n";
    } else if (name == "vertex_count") {
      row.value = std::to_string(s.space.size());
    } else if (name == "diameter") {
      row.value = format_number(diameter(s.space));
    } else if (name == "doubling") {
      const auto& mesh = need_mesh(s);
      const auto k = static_cast<std::size_t>(std::stoul(arg(1, "0")));
      if (k >= mesh.slits.size()) throw InputError("no such slit");
      const Slit& sl = mesh.slits[k];
      const Point mid{sl.x, 0.5 * (sl.y0 + sl.y1)};
      VertexId left = 0, right = 0;
      bool fl = false, fr = false;
      for (VertexId v = 0; v < s.space.size(); ++v) {
        const Vertex& x = s.space.vertex(v);
        if (euclid(x.pos, mid) > 1e-12) continue;
        if (x.side == Side::left) left = v, fl = true;
        if (x.side == Side::right) right = v, fr = true;
      }
      if (!fl || !fr) throw InputError("slit midpoint is not a doubled lattice point");
      row.value = format_number(shortest_dist(s.space, left, right));
      row.paper_ref = "path metric doubles the slit";
    } else if (name == "llc1" || name == "llc2" || name == "allc" || name == "allc_diameter") {
      SampleSpec spec = sample_spec(params, seed, true);
      ConstantReport rep = name == "llc1"   ? llc1_constant(s.space, spec)
                           : name == "llc2" ? llc2_constant(s.space, spec)
                                            : allc_constant(s.space, spec);
      fill_from(row, rep);
      if (name == "allc_diameter") {
        row.value = rep.capped ? "fail" : format_number(rep.extra.at("continuum_diameter_over_r"));
      }
    } else if (name == "ahlfors") {
      SampleSpec spec = sample_spec(params, seed, false);
      ConstantReport rep = ahlfors_fit(s.space, std::stod(arg(1, "2")), spec);
      fill_from(row, rep);
    } else if (name == "relsep") {
      ConstantReport rep = uniform_rel_sep(s.space, separation_components(s));
      fill_from(row, rep);
    } else if (name == "porosity") {
      const MarkedSet set = resolve_set(s, arg(1, "point"));
      SampleSpec spec = sample_spec(params, seed, false);
      ConstantReport rep = porosity_constant(s.space, set.ids, spec);
      fill_from(row, rep);
    } else if (name == "quasicircle") {
      const std::string set = arg(1, s.space.has_marked("circle") ? "circle" : "outer");
      std::optional<MetricKind> metric;
      if (parts.size() > 2) metric = metric_kind_from_string(parts[2]);
      ConstantReport rep = quasicircle_constant(s.space, resolve_set(s, set), metric);
      fill_from(row, rep);
    } else if (name == "nk" || name == "planarity_sum") {
      std::vector<Slit> slits = s.mesh ? s.mesh->slits : s.registry;
      const int kmax = get<int>(params, "kmax", 12);
      const Point x{get<double>(params, "x", 0.0), get<double>(params, "y", 0.0)};
      const double r = get<double>(params, "r", 1.0);
      auto counts = registry_homogeneity_counts(slits, get<bool>(params, "outer", false), x, r, kmax);
      row.paper_ref = "sum of n_k 2^-kQ";
      if (name == "nk") {
        std::string v;
        for (std::size_t k = 0; k < counts.size(); ++k) v += (k ? ";" : "") + std::to_string(counts[k]);
        row.value = v;
      } else {
        const int K = std::stoi(arg(1, "6"));
        if (K < 0 || K > kmax) throw InputError("K outside 0..kmax");
        auto sums = planarity_sums(counts, get<double>(params, "Q", 2.0));
        row.value = format_number(sums[static_cast<std::size_t>(K)]);
      }
    } else if (name == "boundary_components") {
      ComponentSpace cs = boundary_components(s.space, get<double>(params, "eps_factor", 3.0));
      row.value = cs.registry_match ? std::to_string(cs.size()) : "mismatch";
      row.detail = cs.detail;
      row.paper_ref = "epsilon-chain components of the metric boundary";
    } else if (name == "ends") {
      EndProfile prof = ends(s.space, deepest_vertex(s.space));
      row.value = prof.stabilized ? std::to_string(prof.end_count) : "inconclusive";
      std::ostringstream d;
      for (const auto& level : prof.levels) d << format_number(level.width) << ":" << level.parts.size() << " ";
      row.detail = d.str();
      row.paper_ref = "ends of a compact exhaustion";
    } else if (name == "ends_components") {
      auto rep = ends_components_check(s.space);
      row.value = rep.pass ? "pass" : "fail";
      row.detail = std::to_string(rep.ends) + " ends, " + std::to_string(rep.components) + " components. " + rep.detail;
      row.paper_ref = "ends correspond to boundary components";
    } else if (name == "rank") {
      ComponentSpace cs;
      if (s.declared) {
        cs = *s.declared;
      } else if (!s.has_space) {
        // registry: every slit circle accumulates at the outer component
        cs.names.push_back("outer");
        cs.members.emplace_back();
        cs.registry_id.push_back(0);
        for (const Slit& sl : s.registry) {
          cs.names.push_back(sl.circle);
          cs.members.emplace_back();
          cs.registry_id.push_back(static_cast<int>(cs.names.size()) - 1);
          cs.relations.push_back({static_cast<int>(cs.names.size()) - 1, 0});
        }
      } else {
        cs = s.mesh ? component_space(*s.mesh) : boundary_components(s.space);
      }
      row.value = std::to_string(rank(cs));
      row.detail = "declared accumulation structure, " + std::to_string(cs.relations.size()) + " relations";
      row.paper_ref = "rank of the component space";
    } else if (name == "circle_check") {
      std::optional<MetricKind> metric;
      if (parts.size() > 2) metric = metric_kind_from_string(parts[2]);
      SampleSpec spec = sample_spec(params, seed, true);
      auto rep = boundary_circle_check(s.space, resolve_set(s, arg(1, "outer")), metric, spec);
      row.value = rep.is_cycle ? "cycle" : "not-cycle";
      row.detail = rep.is_cycle ? "llc1=" + rep.llc1.value_str() + " three_point=" + rep.three_point.value_str()
                                : rep.detail;
      row.paper_ref = "boundary component is a circle";
    } else if (name == "comparison") {
      auto rep = comparison_check(need_glued(s), get<std::size_t>(params, "sources", 0), seed);
      row.value = rep.pass ? "pass" : "fail";
      row.detail = "pairs=" + std::to_string(rep.pairs) + " min_ratio=" + format_number(rep.min_ratio) +
                   " max_ratio=" + format_number(rep.max_ratio) + " L=" + format_number(rep.L) +
                   (rep.detail.empty() ? "" : " " + rep.detail);
      row.paper_ref = "comparison inequality d~/L <= d <= d~";
    } else if (name == "local_isometry") {
      const double r = std::stod(arg(1, "0.1"));
      auto rep = local_isometry_check(need_glued(s), r, get<std::size_t>(params, "centers", 0), seed);
      row.value = rep.pass ? "pass" : "fail";
      row.detail = "centers=" + std::to_string(rep.centers) + " skipped=" + std::to_string(rep.skipped) +
                   " pairs=" + std::to_string(rep.pairs) + (rep.detail.empty() ? "" : " " + rep.detail);
      row.paper_ref = "interior points estimate";
    } else if (name == "admissible") {
      const auto& g = need_glued(s);
      const int legs = get<int>(params, "legs", 2 * static_cast<int>(g.components() - 1) + 1);
      auto oracle = admissible_distances(g, legs);
      std::size_t bad = 0, pairs = 0;
      for (VertexId a = 0; a < g.space.size(); ++a) {
        auto d = distances_from(g.space, a);
        for (VertexId b = 0; b < g.space.size(); ++b) {
          ++pairs;
          if (d[b] != oracle[a][b]) ++bad;
        }
      }
      row.value = bad == 0 ? "pass" : "fail";
      row.detail = "pairs=" + std::to_string(pairs) + " mismatches=" + std::to_string(bad);
      row.paper_ref = "admissible sequences";
    } else if (name == "flatness") {
      if (!s.instance) throw InputError("check needs a gluing instance");
      row.value = format_number(flatness_check(*s.instance).C);
      row.paper_ref = "condition (A), flat patches";
    } else if (name == "bilipschitz") {
      const auto& g = need_glued(s);
      double L = 1.0;
      for (double l : g.L) L = std::max(L, l);
      row.value = format_number(L);
      row.paper_ref = "bi-Lipschitz gluing maps";
    } else if (name == "net_agreement") {
      const auto& mesh = need_mesh(s);
      const int k = std::stoi(arg(1, "8"));
      const int gen = get<int>(params, "carpet_gen", mesh.generation);
      auto carpet = gen_slit_carpet(gen, mesh.h);
      auto rep = compare_nets(mesh, carpet, k);
      row.value = rep.same_points ? format_number(rep.max_diff) : "different-nets";
      row.detail = "points=" + std::to_string(rep.points) + " max_diff=" + format_number(rep.max_diff) + " " +
                   rep.detail.substr(0, 200);
      row.paper_ref = "pulled-back dyadic nets";
    } else if (name == "inclusion" || name == "cover") {
      const auto& mesh = need_mesh(s);
      const int samples = get<int>(params, "samples", 50);
      const double rlo = get<double>(params, "r_min", 8.0 * mesh.h), rhi = get<double>(params, "r_max", 1.0);
      double worst_c = kInf;
      int worst_balls = 0;
      bool outer = true;
      for (int i = 0; i < samples; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        const auto p = static_cast<VertexId>(rng.index(mesh.space.size()));
        const double r = rng.log_uniform(rlo, rhi);
        if (name == "inclusion") {
          auto res = inclusion_check(mesh, p, r);
          worst_c = std::min(worst_c, res.c);
          outer = outer && res.outer_ok;
        } else {
          worst_balls = std::max(worst_balls, preimage_cover(mesh, project(mesh, p), r, get<double>(params, "factor", 8.0)).balls);
        }
      }
      row.samples = samples;
      row.r_min = rlo;
      row.r_max = rhi;
      if (name == "inclusion") {
        row.value = format_number(worst_c);
        row.detail = outer ? "projection inside B(pi(p), r)" : "projection escapes B(pi(p), r)";
        if (!outer) row.value = "fail";
        row.paper_ref = "ball inclusion under the projection";
      } else {
        row.value = std::to_string(worst_balls);
        row.paper_ref = "preimages of balls are covered by boundedly many balls";
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    row.value = "error";
    row.detail = e.what();
  }
  return row;
}

namespace {

double parse_value(const std::string& v) {
  if (v == "inf") return kInf;
  if (v == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void judge(Row& row, const json& entry) {
  if (!entry.is_object() || !entry.contains("expected")) {
    row.pass = row.value != "error";
    return;
  }
  const json& e = entry.at("expected");
  std::string mode = get<std::string>(entry, "tolerance", e.is_string() || e.is_boolean() ? "flag" : "absolute");
  const double tol = get<double>(entry, "tol", 0.0);
  if (mode != "flag" && mode != "absolute" && mode != "ratio") throw UsageError("unknown tolerance mode '" + mode + "'");
  row.tolerance = mode == "flag" ? "flag" : mode + ":" + format_number(tol);
  if (mode == "flag") {
    const std::string want = e.is_string() ? e.get<std::string>() : e.dump();
    row.expected = want;
    row.pass = row.value == want;
    return;
  }
  double lo, hi;
  if (e.is_number()) {
    lo = hi = e.get<double>();
    row.expected = format_number(lo);
  } else if (e.is_array() && e.size() == 2) {
    lo = e[0].is_null() ? -kInf : e[0].get<double>();
    hi = e[1].is_null() ? kInf : e[1].get<double>();
    row.expected = "[" + format_number(lo) + "," + format_number(hi) + "]";
  } else {
    throw UsageError("expected must be a number, [lo, hi], or a flag string");
  }
  const double v = parse_value(row.value);
  if (std::isnan(v)) {
    row.pass = false;
    return;
  }
  if (mode == "absolute") {
    row.pass = v >= lo - tol && v <= hi + tol;
  } else {
    row.pass = v >= lo * (1.0 - tol) && v <= hi * (1.0 + tol);
  }
}

VerifyResult verify(const json& manifest, std::uint64_t seed_override, const std::string& cache_dir) {
  if (!manifest.is_object()) throw UsageError("manifest must be a JSON object");
  const std::uint64_t base_seed = seed_override ? seed_override : get<std::uint64_t>(manifest, "seed", 1);
  const json entries = manifest.value("entries", json::array());
  if (!entries.is_array()) throw UsageError("'entries' must be an array");

  // validate everything before running anything
  for (const json& e : entries) {
    construction_key(need<json>(e, "construction"));
    need<std::string>(e, "check");
  }
  std::map<std::string, std::shared_ptr<Subject>> subjects;
  VerifyResult out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const json& c = e.at("construction");
    const std::string key = construction_key(c);
    if (!subjects.count(key)) {
      try {
        subjects[key] = build_subject(c, cache_dir);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& ex) {
        Row row;
        row.construction = key;
        row.check = e.at("check").get<std::string>();
        row.seed = derive_seed(base_seed, i);
        row.value = "error";
        row.detail = ex.what();
        judge(row, e);
        out.rows.push_back(std::move(row));
        continue;
      }
    }
    const std::uint64_t seed = e.contains("seed") ? e.at("seed").get<std::uint64_t>() : derive_seed(base_seed, i);
    Row row = run_check(*subjects[key], e.at("check").get<std::string>(), e.value("params", json::object()), seed);
    if (e.contains("paper_ref")) row.paper_ref = e.at("paper_ref").get<std::string>();
    row.provenance = e.value("provenance", std::string());
    judge(row, e);
    out.rows.push_back(std::move(row));
  }
  out.rows = merge_rows({out.rows});
  out.exit_status = std::all_of(out.rows.begin(), out.rows.end(), [](const Row& r) { return r.pass; }) ? 0 : 1;
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  return out + "\"";
}

std::string csv_line(const Row& r) {
  std::ostringstream o;
  o << csv_field(r.construction) << ',' << csv_field(r.check) << ',' << r.seed << ',' << csv_field(r.value) << ','
    << csv_field(r.expected) << ',' << csv_field(r.tolerance) << ',' << (r.pass ? "pass" : "fail") << ','
    << r.samples << ',' << format_number(r.r_min) << ',' << format_number(r.r_max) << ','
    << csv_field(r.paper_ref) << ',' << csv_field(r.provenance) << ',' << csv_field(r.detail);
  return o.str();
}

}  // namespace

std::string rows_to_csv(const std::vector<Row>& rows) {
  std::string out =
      "construction,check,seed,value,expected,tolerance,pass,samples,r_min,r_max,paper_ref,provenance,detail\n";
  for (const Row& r : rows) out += csv_line(r) + "\n";
  return out;
}

json rows_to_json(const std::vector<Row>& rows) {
  json arr = json::array();
  for (const Row& r : rows) {
    json series = json::array();
    for (auto [x, y] : r.series) series.push_back(json::array({x, y}));
    arr.push_back({{"construction", r.construction}, {"check", r.check}, {"seed", r.seed}, {"value", r.value},
                   {"expected", r.expected}, {"tolerance", r.tolerance}, {"pass", r.pass},
                   {"samples", r.samples}, {"r_min", r.r_min}, {"r_max", r.r_max},
                   {"paper_ref", r.paper_ref}, {"provenance", r.provenance}, {"detail", r.detail},
                   {"series", series}});
  }
  return {{"rows", arr}};
}

std::vector<Row> rows_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array()) {
    throw UsageError("report JSON must be an object with a 'rows' array");
  }
  std::vector<Row> rows;
  for (const json& r : j.at("rows")) {
    Row row;
    try {
      row.construction = r.at("construction").get<std::string>();
      row.check = r.at("check").get<std::string>();
      row.seed = r.at("seed").get<std::uint64_t>();
      row.value = r.at("value").get<std::string>();
      row.pass = r.at("pass").get<bool>();
      row.expected = r.value("expected", std::string());
      row.tolerance = r.value("tolerance", std::string());
      row.samples = r.value("samples", 0);
      row.r_min = r.value("r_min", 0.0);
      row.r_max = r.value("r_max", 0.0);
      row.paper_ref = r.value("paper_ref", std::string());
      row.provenance = r.value("provenance", std::string());
      row.detail = r.value("detail", std::string());
      for (const json& p : r.value("series", json::array())) row.series.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    } catch (const json::exception& e) {
      throw UsageError(std::string("report row violates the schema: ") + e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Row> merge_rows(const std::vector<std::vector<Row>>& inputs) {
  std::map<std::tuple<std::string, std::string, std::uint64_t>, Row> merged;
  for (const auto& rows : inputs) {
    for (const Row& r : rows) {
      auto key = std::make_tuple(r.construction, r.check, r.seed);
      auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(key, r);
      } else if (csv_line(it->second) != csv_line(r)) {
        throw UsageError("conflicting rows for " + r.construction + " / " + r.check + " / seed " +
                         std::to_string(r.seed));
      }
    }
  }
  std::vector<Row> out;
  for (auto& [k, r] : merged) out.push_back(std::move(r));
  return out;
}

namespace {

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double W = 480, H = 360, M = 50;
  double px(double x) const { return M + (x - x0) / (x1 - x0) * (W - 2 * M); }
  double py(double y) const { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); }
};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else if (ch == '&') out += "&amp;";
    else out.push_back(ch);
  }
  return out;
}

std::string svg_open(const std::string& title) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" viewBox=\"0 0 480 360\">\n"
    << "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n"
    << "<text x=\"240\" y=\"24\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
    << escape_xml(title) << "</text>\n"
    << "<rect x=\"50\" y=\"50\" width=\"380\" height=\"260\" fill=\"none\" stroke=\"black\"/>\n";
  return o.str();
}

}  // namespace

std::string loglog_svg(const Row& row) {
  std::vector<double> lx, ly;
  for (auto [x, y] : row.series) {
    if (x > 0.0 && y > 0.0) {
      lx.push_back(std::log10(x));
      ly.push_back(std::log10(y));
    }
  }
  if (lx.size() < 2) return {};
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / n, my += ly[i] / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  Frame f{*std::min_element(lx.begin(), lx.end()), *std::max_element(lx.begin(), lx.end()),
          *std::min_element(ly.begin(), ly.end()), *std::max_element(ly.begin(), ly.end())};
  if (f.x1 == f.x0) f.x1 = f.x0 + 1;
  if (f.y1 == f.y0) f.y1 = f.y0 + 1;
  std::ostringstream o;
  o << svg_open(row.construction + " " + row.check + " slope=" + format_number(slope));
  o << "<path d=\"M " << f.px(f.x0) << ' ' << f.py(my + slope * (f.x0 - mx)) << " L " << f.px(f.x1) << ' '
    << f.py(my + slope * (f.x1 - mx)) << "\" stroke=\"#c33\" fill=\"none\"/>\n";
  for (std::size_t i = 0; i < lx.size(); ++i) {
    o << "<circle cx=\"" << f.px(lx[i]) << "\" cy=\"" << f.py(ly[i]) << "\" r=\"3\" fill=\"#236\"/>\n";
  }
  o << "<text x=\"240\" y=\"345\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">log10 r</text>\n";
  o << "</svg>\n";
  return o.str();
}

std::string scatter_svg(const std::vector<Row>& rows) {
  std::vector<std::tuple<double, double, bool>> pts;
  for (const Row& r : rows) {
    const double v = parse_value(r.value);
    double e = std::numeric_limits<double>::quiet_NaN();
    if (!r.expected.empty() && r.expected.front() == '[') {
      auto inner = split(r.expected.substr(1, r.expected.size() - 2), ',');
      const double lo = parse_value(inner[0]), hi = parse_value(inner[1]);
      e = std::isfinite(lo) && std::isfinite(hi) ? 0.5 * (lo + hi) : std::isfinite(lo) ? lo : hi;
    } else {
      e = parse_value(r.expected);
    }
    if (std::isfinite(v) && std::isfinite(e)) pts.push_back({e, v, r.pass});
  }
  if (pts.empty()) return {};
  double lo = kInf, hi = -kInf;
  for (auto [e, v, p] : pts) lo = std::min({lo, e, v}), hi = std::max({hi, e, v});
  if (hi == lo) hi = lo + 1;
  Frame f{lo, hi, lo, hi};
  std::ostringstream o;
  o << svg_open("attained vs expected");
  o << "<path d=\"M " << f.px(lo) << ' ' << f.py(lo) << " L " << f.px(hi) << ' ' << f.py(hi)
    << "\" stroke=\"#999\" fill=\"none\"/>\n";
  for (auto [e, v, p] : pts) {
    o << "<circle cx=\"" << f.px(e) << "\" cy=\"" << f.py(v) << "\" r=\"3\" fill=\"" << (p ? "#286" : "#c33")
      << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace carpetlab
