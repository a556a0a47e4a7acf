#ifndef EO_VERIFY_HPP
#define EO_VERIFY_HPP

#include <string>

#include "eo/boundary.hpp"
#include "eo/char_integrals.hpp"
#include "eo/eta.hpp"
#include "eo/metrics.hpp"

namespace eo {

struct EulerSection {
  ConvergenceTable table;
  double cs_limit = 0;     // cone ends: vol/(2 pi^2) + alpha; else 0
  double cs_measured = 0;  // -Int Q at the outermost hypersurface (diagnostic)
  int chi_declared = 0;
  double chi_numeric = 0;
  double residual = 0;
  double error = 0;
};

struct SignatureSection {
  ConvergenceTable table;
  EtaValue half_eta;
  int tau_declared = 0;
  int pinned_sign = +1;       // sign s in tau = Int L - s * (1/2 a-lim eta)
  std::string convention;     // "theorem-3.5" / "corollary-1.2" / "n/a"
  double residual = 0;        // with the pinned sign
  double residual_other = 0;  // with the opposite sign
  double error = 0;
};

struct CurvatureSummary {
  double einstein_residual_max = 0;
  std::string weyl_chirality;  // which half survives, recorded not assumed
  int scalar_sign = 0;
  double max_norm2_wplus = 0;
  double max_norm2_wminus = 0;
};

struct IndexReport {
  std::string metric;
  bool einstein_flagged = false;
  double orientation = 1.0;
  EulerSection euler;
  SignatureSection signature;
  CurvatureSummary curvature;
  double tol = 1e-4;
  bool pass = false;
  bool eta_sign_ambiguous = false;  // both conventions failed: loud failure
};

EulerSection verify_euler(const CohomOneMetric& g, const QuadratureSpec& spec = {});
SignatureSection verify_signature(const CohomOneMetric& g,
                                  const QuadratureSpec& spec = {});
CurvatureSummary curvature_summary(const CohomOneMetric& g, int samples = 16);

IndexReport verify_metric(const CohomOneMetric& g, const QuadratureSpec& spec = {},
                          double tol = 1e-4);

// chi - (3/2) |tau + s * half_eta| with the pinned sign; vanishes for the
// Ricci-flat half-flat catalog entries.
double equality_gap(const IndexReport& report);

}  // namespace eo

#endif  // EO_VERIFY_HPP
