// One line per acceptance criterion; exit 0 iff every criterion passes.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "carpetlab/mesh_io.hpp"
#include "carpetlab/sampling.hpp"
#include "carpetlab/verify.hpp"

using namespace carpetlab;
using nlohmann::json;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : CARPETLAB_MANIFEST;
  json manifest = read_json_file(path);
  std::string cache;
  if (const char* c = std::getenv("CARPETLAB_CACHE")) cache = c;
  else cache = (std::filesystem::temp_directory_path() / "carpetlab_acceptance_cache").string();

  std::map<std::pair<std::string, std::string>, int> criterion_of;
  for (const json& e : manifest.at("entries")) {
    criterion_of[{construction_key(e.at("construction")), e.at("check").get<std::string>()}] = e.at("criterion").get<int>();
  }

  set_default_threads(1);
  VerifyResult one = verify(manifest, 0, cache);
  set_default_threads(8);
  VerifyResult eight = verify(manifest, 0, cache);
  set_default_threads(0);

  std::map<int, std::vector<const Row*>> groups;
  for (const Row& r : one.rows) groups[criterion_of.at({r.construction, r.check})].push_back(&r);

  bool all = true;
  for (const auto& [crit, rows] : groups) {
    std::size_t ok = 0;
    std::ostringstream what;
    for (const Row* r : rows) {
      ok += r->pass;
      if (!r->pass || rows.size() <= 3) {
        what << " " << r->construction << " " << r->check << "=" << r->value << (r->pass ? "" : " (want " + r->expected + ")")
             << ";";
      }
    }
    const bool pass = ok == rows.size();
    all = all && pass;
    std::cout << "criterion " << crit << ": " << (pass ? "PASS" : "FAIL") << " " << ok << "/" << rows.size()
              << what.str() << "\n";
  }
  const bool same = rows_to_csv(one.rows) == rows_to_csv(eight.rows);
  all = all && same;
  std::cout << "criterion 19: " << (same ? "PASS" : "FAIL") << " CSV with 1 and 8 threads "
            << (same ? "byte-identical" : "differs") << " (" << one.rows.size() << " rows)\n";
  return all ? 0 : 1;
}
