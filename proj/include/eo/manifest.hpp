#ifndef EO_MANIFEST_HPP
#define EO_MANIFEST_HPP

#include <map>
#include <string>
#include <vector>

#include "eo/boundary.hpp"
#include "eo/metrics.hpp"
#include "eo/verify.hpp"
#include "json.hpp"

namespace eo {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One named metric in a manifest: kind plus key = value parameters.
struct ManifestEntry {
  std::string name;
  std::string kind;
  std::map<std::string, std::string> kv;

  double num(const std::string& key, double fallback) const;
  std::string str(const std::string& key, const std::string& fallback) const;
};

struct Manifest {
  std::vector<ManifestEntry> metrics;
  std::map<std::string, std::string> defaults;

  static Manifest parse_string(const std::string& text);
  static Manifest parse_file(const std::string& path);
};

// Built-in catalog, expressed in the manifest format itself.
std::string default_manifest_text();

CohomOneMetric build_metric(const ManifestEntry& entry);
std::vector<CohomOneMetric> catalog_from_manifest(const Manifest& m);

// Locale-independent shortest-faithful decimal rendering.
std::string format_decimal(double v);

// JSON report (all measured numerics as decimal strings with error bounds);
// serialization is byte-stable under a parse/dump round trip.
nlohmann::ordered_json report_json(const IndexReport& rep);

// CSV sweep output: header row, eps strictly decreasing.
std::string sweep_csv(const SweepResult& s);

}  // namespace eo

#endif  // EO_MANIFEST_HPP
