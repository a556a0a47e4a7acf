#include "eo/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace eo {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

double ManifestEntry::num(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ManifestError("manifest: bad numeric value for '" + key + "' in [" +
                        name + "]");
  }
}

std::string ManifestEntry::str(const std::string& key,
                               const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

Manifest Manifest::parse_string(const std::string& text) {
  Manifest m;
  ManifestEntry* current = nullptr;
  bool in_defaults = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ManifestError("manifest: unterminated section header at line " +
                            std::to_string(lineno));
      std::string head = trim(t.substr(1, t.size() - 2));
      if (head == "defaults") {
        in_defaults = true;
        current = nullptr;
        continue;
      }
      if (head.rfind("metric", 0) != 0)
        throw ManifestError("manifest: unknown section '" + head + "'");
      std::string nm = trim(head.substr(6));
      if (nm.empty()) throw ManifestError("manifest: metric section needs a name");
      for (const auto& e : m.metrics)
        if (e.name == nm)
          throw ManifestError("manifest: duplicate metric name '" + nm + "'");
      m.metrics.push_back({nm, "", {}});
      current = &m.metrics.back();
      in_defaults = false;
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ManifestError("manifest: expected key = value at line " +
                          std::to_string(lineno));
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (in_defaults) {
      m.defaults[key] = val;
    } else if (current) {
      if (key == "kind")
        current->kind = val;
      else
        current->kv[key] = val;
    } else {
      throw ManifestError("manifest: key outside any section at line " +
                          std::to_string(lineno));
    }
  }
  for (const auto& e : m.metrics)
    if (e.kind.empty())
      throw ManifestError("manifest: metric '" + e.name + "' has no kind");
  return m;
}

Manifest Manifest::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("manifest: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

std::string default_manifest_text() {
  return R"([metric flat-r4]
kind = flat_r4

[metric round-s4]
kind = round_s4
radius = 1.0

[metric taub-nut]
kind = taub_nut
m = 1.0

[metric eguchi-hanson]
kind = eguchi_hanson
a = 1.0

[metric euclidean-schwarzschild]
kind = euclidean_schwarzschild
m = 1.0

[metric fb-model]
kind = model_fibered_boundary
euler = 1
base = S2
fiber_len = 6.283185307179586

[metric cusp-model]
kind = model_fibered_cusp
euler = 0
base = T2
fiber_len = 6.283185307179586

[defaults]
rmax = 1e4
tol = 1e-4
)";
}

CohomOneMetric build_metric(const ManifestEntry& entry) {
  CohomOneMetric m;
  if (entry.kind == "flat_r4") {
    m = flat_r4();
  } else if (entry.kind == "round_s4") {
    m = round_s4(entry.num("radius", 1.0));
  } else if (entry.kind == "taub_nut") {
    m = taub_nut(entry.num("m", 1.0));
  } else if (entry.kind == "eguchi_hanson") {
    m = eguchi_hanson(entry.num("a", 1.0));
  } else if (entry.kind == "euclidean_schwarzschild") {
    m = euclidean_schwarzschild(entry.num("m", 1.0));
  } else if (entry.kind == "model_fibered_boundary") {
    m = model_fibered_boundary(int(entry.num("euler", 1)),
                               entry.str("base", "S2"),
                               entry.num("fiber_len", 2 * M_PI));
  } else if (entry.kind == "model_fibered_cusp") {
    m = model_fibered_cusp(int(entry.num("euler", 0)), entry.str("base", "T2"),
                           entry.num("fiber_len", 2 * M_PI));
  } else {
    throw ManifestError("manifest: unknown metric kind '" + entry.kind + "'");
  }
  m.name = entry.name;
  return m;
}

std::vector<CohomOneMetric> catalog_from_manifest(const Manifest& man) {
  std::vector<CohomOneMetric> out;
  out.reserve(man.metrics.size());
  for (const auto& e : man.metrics) out.push_back(build_metric(e));
  return out;
}

std::string format_decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

nlohmann::ordered_json value_with_error(double v, double e) {
  return {{"value", format_decimal(v)}, {"error", format_decimal(e)}};
}

nlohmann::ordered_json table_json(const ConvergenceTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"rmax", format_decimal(r.rmax)},
                    {"value", format_decimal(r.value)},
                    {"error", format_decimal(r.error)}});
  return {{"rows", rows},
          {"extrapolated", format_decimal(t.extrapolated)},
          {"est_order", format_decimal(t.est_order)}};
}

}  // namespace

nlohmann::ordered_json report_json(const IndexReport& rep) {
  nlohmann::ordered_json j;
  j["metric"] = rep.metric;
  j["einstein_flagged"] = rep.einstein_flagged;
  j["conventions"] = {
      {"frame_order", "radial, base, fiber"},
      {"orientation", rep.orientation > 0 ? "+1" : "-1"},
      {"euler_identity", "chi = Int Pf - Int Q"},
      {"signature_identity", "tau = Int L - s * (1/2 a-lim eta)"},
      {"pinned_eta_sign", rep.signature.convention},
  };
  j["euler"] = {
      {"integral", table_json(rep.euler.table)},
      {"cs_limit", format_decimal(rep.euler.cs_limit)},
      {"cs_measured", format_decimal(rep.euler.cs_measured)},
      {"chi_declared", rep.euler.chi_declared},
      {"chi_numeric", value_with_error(rep.euler.chi_numeric, rep.euler.error)},
      {"residual", format_decimal(rep.euler.residual)},
  };
  j["signature"] = {
      {"integral", table_json(rep.signature.table)},
      {"half_eta", rep.signature.half_eta.exact
                       ? rep.signature.half_eta.q.str()
                       : format_decimal(rep.signature.half_eta.x)},
      {"half_eta_exact", rep.signature.half_eta.exact},
      {"half_eta_provenance", rep.signature.half_eta.provenance},
      {"tau_declared", rep.signature.tau_declared},
      {"pinned_sign", rep.signature.pinned_sign},
      {"pinned_convention", rep.signature.convention},
      {"residual", value_with_error(rep.signature.residual, rep.signature.error)},
      {"residual_other_convention", format_decimal(rep.signature.residual_other)},
  };
  j["curvature"] = {
      {"einstein_residual_max", format_decimal(rep.curvature.einstein_residual_max)},
      {"weyl_chirality", rep.curvature.weyl_chirality},
      {"scalar_sign", rep.curvature.scalar_sign},
  };
  j["tolerance"] = format_decimal(rep.tol);
  j["eta_sign_ambiguous"] = rep.eta_sign_ambiguous;
  j["pass"] = rep.pass;
  return j;
}

std::string sweep_csv(const SweepResult& s) {
  std::string out = "eps,cs_euler,cs_signature,quad_error\n";
  for (const auto& r : s.rows) {
    out += format_decimal(r.eps);
    out += ",";
    out += format_decimal(r.cs_euler);
    out += ",";
    out += format_decimal(r.cs_signature);
    out += ",";
    out += format_decimal(r.cross_check_error);
    out += "\n";
  }
  return out;
}

}  // namespace eo
