#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "carpetlab/boundary.hpp"
#include "carpetlab/constructions.hpp"
#include "carpetlab/gluing.hpp"
#include "carpetlab/space.hpp"

namespace carpetlab {

/// Malformed manifests, unknown checks, schema violations (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whatever a check can look at: a space plus the structure it came with.
struct Subject {
  std::string key;
  DiscreteSpace space;
  std::optional<SlitDomainMesh> mesh;
  std::optional<GluingInstance> instance;
  std::optional<GluedSpace> glued;
  std::optional<ComponentSpace> declared;  // declared structure without a mesh
  std::vector<Slit> registry;              // registry-only constructions
  bool has_space = true;
};

/// Canonical key such as "Q(2,2^-7)" for a construction object.
std::string construction_key(const nlohmann::json& construction);

/// Builds (or loads from `cache_dir`, when nonempty) the construction.
std::shared_ptr<Subject> build_subject(const nlohmann::json& construction, const std::string& cache_dir = "");

struct Row {
  std::string construction;
  std::string check;
  std::uint64_t seed = 0;
  std::string value;
  std::string expected;
  std::string tolerance;
  bool pass = true;
  int samples = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::string paper_ref;
  std::string provenance;
  std::string detail;
  std::vector<std::pair<double, double>> series;
};

/// Runs one named check ("llc1", "ahlfors:2", "porosity:slit0", ...) with
/// optional parameters; fills value, samples, radii, paper_ref, detail.
Row run_check(const Subject& subject, const std::string& check, const nlohmann::json& params, std::uint64_t seed);

/// Judges `row.value` against an expectation {"expected": x | [lo, hi] | "flag",
/// "tolerance": "ratio" | "absolute" | "flag", "tol": t}.
void judge(Row& row, const nlohmann::json& entry);

struct VerifyResult {
  std::vector<Row> rows;  // sorted by (construction, check, seed)
  int exit_status = 0;
};

/// Runs a manifest {"seed": s, "entries": [{"construction", "check", ...}]}.
/// Check seeds derive from the manifest seed and the entry index.
VerifyResult verify(const nlohmann::json& manifest, std::uint64_t seed_override = 0,
                    const std::string& cache_dir = "");

std::string format_number(double x);

std::string rows_to_csv(const std::vector<Row>& rows);
nlohmann::json rows_to_json(const std::vector<Row>& rows);
std::vector<Row> rows_from_json(const nlohmann::json& j);

/// Deterministic merge keyed by (construction, check, seed); equal duplicates
/// collapse, conflicting duplicates are a usage error.
std::vector<Row> merge_rows(const std::vector<std::vector<Row>>& inputs);

/// Log-log SVG of a series with its fitted slope in the title.
std::string loglog_svg(const Row& row);
/// Scatter of attained value against expected midpoint for numeric rows.
std::string scatter_svg(const std::vector<Row>& rows);

}  // namespace carpetlab
