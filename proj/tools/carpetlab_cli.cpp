// carpetlab command line: generate | analyze | glue | boundary | verify | report
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "carpetlab/boundary.hpp"
#include "carpetlab/gluing.hpp"
#include "carpetlab/mesh_io.hpp"
#include "carpetlab/sampling.hpp"
#include "carpetlab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace carpetlab;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir = ".";
};

void write_text(const std::string& path, const std::string& text) {
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string in_dir(const Globals& g, const std::string& name) {
  if (fs::path(name).is_absolute() || fs::path(name).has_parent_path()) return name;
  return (fs::path(g.out_dir) / name).string();
}

std::string cache_dir() {
  const char* c = std::getenv("CARPETLAB_CACHE");
  return c ? c : "";
}

// generate ------------------------------------------------------------------

struct GenerateOpts {
  std::string family = "Q";
  int gen = 1;
  int res = 6;
  int m = 64;
  std::string disks;
  std::string out = "mesh.json";
};

int run_generate(const Globals& g, const GenerateOpts& o) {
  json c = {{"family", o.family}, {"gen", o.gen}, {"res", o.res}, {"m", o.m}};
  if (!o.disks.empty()) {
    json d = read_json_file(o.disks);
    c["disks"] = d.is_object() ? d.at("disks") : d;
  }
  auto s = build_subject(c);
  json j = s->mesh ? mesh_to_json(*s->mesh) : space_to_json(s->space);
  write_json_file(in_dir(g, o.out), j);
  std::cout << s->key << ": " << s->space.size() << " vertices -> " << in_dir(g, o.out) << "\n";
  return 0;
}

// analyze -------------------------------------------------------------------

struct AnalyzeOpts {
  std::string in;
  std::string checks = "llc1,llc2";
  int samples = 50;
  std::string out;
  std::string expect;
};

int run_analyze(const Globals& g, const AnalyzeOpts& o) {
  auto s = build_subject({{"family", "file"}, {"path", o.in}});
  json expect = o.expect.empty() ? json::object() : read_json_file(o.expect);
  std::istringstream list(o.checks);
  std::string check;
  std::ostringstream csv;
  csv << "check,value,samples,seed,r_min,r_max,paper_ref,pass\n";
  bool all = true;
  std::uint64_t i = 0;
  while (std::getline(list, check, ',')) {
    if (check.empty()) continue;
    const std::uint64_t seed = derive_seed(g.seed ? g.seed : 1, i++);
    Row row = run_check(*s, check, {{"samples", o.samples}}, seed);
    judge(row, expect.value(check, json::object()));
    all = all && row.pass;
    auto quote = [](const std::string& x) {
      if (x.find_first_of(",\"\n") == std::string::npos) return x;
      std::string q = "\"";
      for (char ch : x) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    };
    csv << quote(row.check) << ',' << quote(row.value) << ',' << row.samples << ',' << row.seed << ','
        << format_number(row.r_min) << ',' << format_number(row.r_max) << ',' << quote(row.paper_ref) << ','
        << (row.pass ? "pass" : "fail") << "\n";
  }
  if (o.out.empty()) std::cout << csv.str();
  else write_text(in_dir(g, o.out), csv.str());
  return all ? 0 : 1;
}

// glue ----------------------------------------------------------------------

struct GlueOpts {
  std::string base;
  std::vector<std::string> patches;
  bool fill = false;
  std::string out = "glued.json";
};

int run_glue(const Globals& g, const GlueOpts& o) {
  json bj = read_json_file(o.base);
  GluingInstance inst;
  if (o.fill) inst = fill_slits_instance(mesh_from_json(bj));
  else inst.base = space_from_json(bj);
  for (const std::string& spec : o.patches) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos) throw UsageError("--patch expects mesh.json:map.json");
    Patch p;
    p.space = space_from_json(read_json_file(spec.substr(0, colon)));
    json mj = read_json_file(spec.substr(colon + 1));
    try {
      for (const json& pr : mj.at("pairs")) p.map.pairs.push_back({pr.at(0).get<VertexId>(), pr.at(1).get<VertexId>()});
      p.map.L = mj.at("L").get<double>();
    } catch (const json::exception& e) {
      throw InputError("map file " + spec.substr(colon + 1) + ": " + e.what());
    }
    inst.patches.push_back(std::move(p));
  }
  if (inst.patches.empty()) throw UsageError("nothing to glue: give --patch or --fill-slits");
  GluedSpace glued = glue(inst);
  write_json_file(in_dir(g, o.out), glued_to_json(glued));
  std::cout << "glued " << inst.patches.size() << " patches: " << glued.space.size() << " vertices, L="
            << format_number(glued.declared_L) << " -> " << in_dir(g, o.out) << "\n";
  return 0;
}

// boundary ------------------------------------------------------------------

struct BoundaryOpts {
  std::string in;
  bool ends = false;
  bool rank = false;
  bool circles = false;
  std::string out = "boundary.json";
};

int run_boundary(const Globals& g, const BoundaryOpts& o) {
  SlitDomainMesh mesh = mesh_from_json(read_json_file(o.in));
  ComponentSpace cs = boundary_components(mesh.space);
  json comps = json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    comps.push_back({{"name", cs.names[i]}, {"size", cs.members[i].size()}, {"registry_id", cs.registry_id[i]}});
  }
  json report = {{"components", {{"items", comps}, {"registry_match", cs.registry_match}, {"detail", cs.detail}}}};
  if (o.ends) {
    EndProfile p = ends(mesh.space, deepest_vertex(mesh.space));
    json levels = json::array();
    for (const auto& l : p.levels) {
      json sizes = json::array();
      for (const auto& part : l.parts) sizes.push_back(part.size());
      levels.push_back({{"width", l.width}, {"parts", sizes}, {"parent", l.parent}});
    }
    report["ends"] = {{"basepoint", p.basepoint}, {"levels", levels}, {"nesting_ok", p.nesting_ok},
                      {"stabilized", p.stabilized}, {"end_count", p.end_count}};
  }
  if (o.rank) {
    ComponentSpace declared = mesh.slits.empty() ? cs : component_space(mesh);
    json rel = json::array();
    for (auto [a, b] : declared.relations) rel.push_back({declared.names[a], declared.names[b]});
    report["rank"] = {{"value", rank(declared)}, {"relations", rel},
                      {"note", "computed on the declared accumulation structure"}};
  }
  if (o.circles) {
    json circles = json::array();
    for (const std::string& name : cs.names) {
      if (!mesh.space.has_marked(name)) continue;
      CircleReport c = boundary_circle_check(mesh.space, mesh.space.marked(name), std::nullopt, SampleSpec{});
      circles.push_back({{"name", name}, {"is_cycle", c.is_cycle}, {"vertices", c.vertices},
                         {"llc1", c.is_cycle ? c.llc1.value_str() : "n/a"},
                         {"three_point", c.is_cycle ? c.three_point.value_str() : "n/a"}, {"detail", c.detail}});
    }
    report["circles"] = circles;
  }
  write_text(in_dir(g, o.out), report.dump(2) + "\n");
  std::cout << cs.size() << " boundary components -> " << in_dir(g, o.out) << "\n";
  return 0;
}

// verify / report -----------------------------------------------------------

int run_verify(const Globals& g, const std::string& manifest) {
  json m;
  try {
    m = read_json_file(manifest);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  VerifyResult res = verify(m, g.seed, cache_dir());
  write_text(in_dir(g, "report.csv"), rows_to_csv(res.rows));
  write_text(in_dir(g, "report.json"), rows_to_json(res.rows).dump(2) + "\n");
  std::size_t passed = 0;
  for (const Row& r : res.rows) {
    passed += r.pass;
    if (!r.pass) std::cerr << "FAIL " << r.construction << " " << r.check << " = " << r.value << "\n";
  }
  std::cout << passed << "/" << res.rows.size() << " checks pass -> " << in_dir(g, "report.csv") << "\n";
  return res.exit_status;
}

int run_report(const Globals& g, const std::vector<std::string>& inputs, bool svg) {
  std::vector<std::vector<Row>> all;
  for (const std::string& in : inputs) {
    try {
      all.push_back(rows_from_json(read_json_file(in)));
    } catch (const InputError& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<Row> rows = merge_rows(all);
  write_text(in_dir(g, "report.csv"), rows_to_csv(rows));
  if (svg) {
    const std::string scatter = scatter_svg(rows);
    if (!scatter.empty()) write_text(in_dir(g, "scatter.svg"), scatter);
    int k = 0;
    for (const Row& r : rows) {
      const std::string plot = loglog_svg(r);
      if (!plot.empty()) write_text(in_dir(g, "loglog_" + std::to_string(k++) + ".svg"), plot);
    }
  }
  std::cout << rows.size() << " rows -> " << in_dir(g, "report.csv") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carpetlab: discrete metric-geometry checks for slit domains, carpets and gluings"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "manifest-level seed override (0 keeps the manifest seed)");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", g.out_dir, "directory for relative output paths");

  GenerateOpts gen;
  auto* c_gen = app.add_subcommand("generate", "build a mesh and write it as JSON");
  c_gen->add_option("--family", gen.family, "Q | R | Qinf | carpet | square | circles | round | cycle | cylinder");
  c_gen->add_option("--gen", gen.gen, "generation");
  c_gen->add_option("--res", gen.res, "resolution exponent m, h = 2^-m");
  c_gen->add_option("--vertices", gen.m, "vertex count for curves");
  c_gen->add_option("--disks", gen.disks, "JSON list of [x, y, radius]");
  c_gen->add_option("--out", gen.out, "output mesh file");

  AnalyzeOpts an;
  auto* c_an = app.add_subcommand("analyze", "run checks on a mesh file");
  c_an->add_option("--in", an.in, "mesh file")->required();
  c_an->add_option("--checks", an.checks, "comma separated checks");
  c_an->add_option("--samples", an.samples, "samples per check");
  c_an->add_option("--out", an.out, "CSV output (stdout if omitted)");
  c_an->add_option("--expect", an.expect, "JSON object: check -> {expected, tolerance, tol}");

  GlueOpts gl;
  auto* c_gl = app.add_subcommand("glue", "glue patches onto a base space");
  c_gl->add_option("--base", gl.base, "base mesh")->required();
  c_gl->add_option("--patch", gl.patches, "patch mesh and map, mesh.json:map.json");
  c_gl->add_flag("--fill-slits", gl.fill, "cap every slit circle with a hemisphere");
  c_gl->add_option("--out", gl.out, "glued output");

  BoundaryOpts bd;
  auto* c_bd = app.add_subcommand("boundary", "boundary components, ends, rank, circles");
  c_bd->add_option("--in", bd.in, "mesh file")->required();
  c_bd->add_flag("--ends", bd.ends);
  c_bd->add_flag("--rank", bd.rank);
  c_bd->add_flag("--circles", bd.circles);
  c_bd->add_option("--out", bd.out, "report JSON");

  std::string manifest;
  auto* c_ver = app.add_subcommand("verify", "run a manifest; writes report.csv and report.json");
  c_ver->add_option("manifest", manifest, "manifest JSON")->required();

  std::vector<std::string> inputs;
  bool svg = false;
  auto* c_rep = app.add_subcommand("report", "merge report JSON files into one CSV");
  c_rep->add_option("inputs", inputs, "report.json files")->required();
  c_rep->add_flag("--svg", svg, "also write scatter and log-log SVG plots");

  for (auto* sub : {c_gen, c_an, c_gl, c_bd, c_ver, c_rep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  set_default_threads(g.threads);
  try {
    if (*c_gen) return run_generate(g, gen);
    if (*c_an) return run_analyze(g, an);
    if (*c_gl) return run_glue(g, gl);
    if (*c_bd) return run_boundary(g, bd);
    if (*c_ver) return run_verify(g, manifest);
    if (*c_rep) return run_report(g, inputs, svg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
