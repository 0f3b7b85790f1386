#include "carpetlab/mesh_io.hpp"

#include <fstream>

namespace carpetlab {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw InputError(std::string("missing '") + key + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad '") + key + "' in " + where + ": " + e.what());
  }
}

}  // namespace

json space_to_json(const DiscreteSpace& space) {
  json j;
  j["h"] = space.h();
  j["label"] = space.label();
  j["metric"] = to_string(space.metric());
  j["planar"] = space.planar();
  json verts = json::array();
  for (VertexId v = 0; v < space.size(); ++v) {
    const Vertex& x = space.vertex(v);
    verts.push_back({{"id", v}, {"x", x.pos.x}, {"y", x.pos.y}, {"side", to_string(x.side)},
                     {"pitch", x.pitch}, {"mass", x.mass}});
  }
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (const Edge& e : space.edges()) edges.push_back(json::array({e.u, e.v, e.length}));
  j["edges"] = std::move(edges);
  json marked = json::object();
  for (const auto& [name, set] : space.marked()) {
    marked[name] = {{"kind", to_string(set.kind)}, {"ids", set.ids}, {"component", set.component},
                    {"cyclic", set.cyclic}};
  }
  j["marked"] = std::move(marked);
  return j;
}

DiscreteSpace space_from_json(const json& j) {
  if (!j.is_object()) throw InputError("mesh JSON must be an object");
  const double h = field<double>(j, "h", "mesh");
  SpaceBuilder b;
  b.h(h);
  b.label(j.value("label", std::string("mesh")));
  b.metric(metric_kind_from_string(j.value("metric", std::string("path"))));
  b.planar(j.value("planar", true));
  const json& verts = field<json>(j, "vertices", "mesh");
  if (!verts.is_array()) throw InputError("'vertices' must be an array");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const json& v = verts[i];
    if (field<std::size_t>(v, "id", "vertex") != i) throw InputError("vertex ids must be 0..n-1 in order");
    b.add_vertex({field<double>(v, "x", "vertex"), field<double>(v, "y", "vertex")},
                 side_from_string(v.value("side", std::string("none"))), v.value("pitch", h), v.value("mass", 0.0));
  }
  for (const json& e : field<json>(j, "edges", "mesh")) {
    if (!e.is_array() || e.size() != 3) throw InputError("edges must be [u, v, length] triples");
    const auto u = e[0].get<std::size_t>(), v = e[1].get<std::size_t>();
    if (u >= b.vertex_count() || v >= b.vertex_count()) throw InputError("edge refers to a missing vertex");
    b.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v), e[2].get<double>());
  }
  if (j.contains("marked")) {
    for (const auto& [name, m] : j.at("marked").items()) {
      MarkedSet set;
      set.name = name;
      set.kind = marked_kind_from_string(m.value("kind", std::string("generic")));
      set.ids = field<std::vector<VertexId>>(m, "ids", "marked set");
      set.component = m.value("component", -1);
      set.cyclic = m.value("cyclic", false);
      b.add_marked(std::move(set));
    }
  }
  return std::move(b).build();
}

json mesh_to_json(const SlitDomainMesh& mesh) {
  json j = space_to_json(mesh.space);
  j["family"] = mesh.family;
  j["generation"] = mesh.generation;
  j["outer"] = mesh.outer;
  json slits = json::array();
  for (const Slit& s : mesh.slits) {
    slits.push_back({{"id", s.id}, {"x", s.x}, {"y0", s.y0}, {"y1", s.y1}, {"generation", s.generation},
                     {"level", s.level}, {"circle", s.circle}});
  }
  j["slits"] = std::move(slits);
  if (mesh.accumulation) j["accumulation"] = *mesh.accumulation;
  return j;
}

SlitDomainMesh mesh_from_json(const json& j) {
  SlitDomainMesh mesh;
  mesh.space = space_from_json(j);
  mesh.h = mesh.space.h();
  mesh.family = j.value("family", std::string("mesh"));
  mesh.generation = j.value("generation", 0);
  mesh.outer = j.value("outer", std::string("outer"));
  if (j.contains("slits")) {
    for (const json& s : j.at("slits")) {
      Slit slit;
      slit.id = field<int>(s, "id", "slit");
      slit.x = field<double>(s, "x", "slit");
      slit.y0 = field<double>(s, "y0", "slit");
      slit.y1 = field<double>(s, "y1", "slit");
      slit.generation = s.value("generation", 0);
      slit.level = s.value("level", 0);
      slit.circle = field<std::string>(s, "circle", "slit");
      if (!mesh.space.has_marked(slit.circle)) throw InputError("slit circle '" + slit.circle + "' is not marked");
      mesh.slits.push_back(std::move(slit));
    }
  }
  if (j.contains("accumulation")) mesh.accumulation = j.at("accumulation").get<VertexId>();
  return mesh;
}

json glued_to_json(const GluedSpace& glued) {
  json j = space_to_json(glued.space);
  j["provenance"] = {{"patch", glued.patch_of}, {"original", glued.original}};
  json ids = json::array();
  for (const auto& id : glued.identifications) ids.push_back(json::array({id[0], id[1]}));
  j["identifications"] = std::move(ids);
  j["L"] = glued.L;
  j["declared_L"] = glued.declared_L;
  j["conditions"] = {{"C", glued.C}, {"c", glued.c}, {"Q", glued.Q}, {"M", glued.M}};
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump() << "\n";
}

}  // namespace carpetlab
