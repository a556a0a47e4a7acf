#ifndef EO_BOUNDARY_HPP
#define EO_BOUNDARY_HPP

#include <vector>

#include "eo/char_integrals.hpp"
#include "eo/metrics.hpp"

namespace eo {

// Second fundamental form of the hypersurface x = eps, reported with the
// classical sign: theta^0_a = +(1/R) e^a on a round sphere of radius R with
// outward normal.  Internally this is the connection difference omega -
// omega_0 against the frozen product metric, reoriented along the outward
// normal of the end.
struct SecondFundamentalForm {
  int n = 4;
  double eps = 0;
  double radius = 0;
  double normal_sign = 1.0;
  // theta[a][b] as 1-forms on the hypersurface: coordinate and frame comps.
  std::array<std::array<std::array<double, 4>, 4>, 4> coord{};
  std::array<std::array<std::array<double, 4>, 4>, 4> frame{};

  double max_tangent_tangent() const {
    double m = 0;
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b)
        for (int mu = 0; mu < n; ++mu)
          m = std::max(m, std::abs(coord[a][b][mu]));
    return m;
  }
  double max_normal_component(int tangent_leg) const {
    double m = 0;
    for (int mu = 0; mu < n; ++mu)
      m = std::max(m, std::abs(coord[0][tangent_leg][mu]));
    return m;
  }
};

SecondFundamentalForm second_fundamental_form(const CohomOneMetric& g, double eps);
SecondFundamentalForm second_fundamental_form_at_radius(const CohomOneMetric& g,
                                                        double R);

struct DecayFit {
  double slope = 0;
  double r_squared = 0;
  int points_used = 0;
  bool valid = false;  // enough points above the noise floor and a clean fit
};

struct SweepRow {
  double eps = 0;
  double cs_euler = 0;
  double cs_signature = 0;
  double cross_check_error = 0;  // |generic transgression - explicit formula|
};

struct SweepResult {
  std::vector<SweepRow> rows;  // eps strictly decreasing
  DecayFit euler_fit;
  DecayFit signature_fit;
};

// Chern-Simons boundary integrals along a schedule of hypersurfaces.
// Requires a fibered boundary/cusp end with positive-dimensional fiber; cone
// ends are refused (their limit is nonzero and handled by the alpha path).
SweepResult cs_sweep(const CohomOneMetric& g, std::vector<double> eps_schedule);

// Least-squares log-log fit, dropping values below the 1e-12 noise floor.
DecayFit fit_decay(const std::vector<double>& eps, const std::vector<double>& vals);

struct AlphaResult {
  double alpha = 0;
  double boundary_volume = 0;
  double form_bracket = 0;   // (1/8pi^2) Int eps_abc w^a ^ [Omega^b_c - w^b ^ w^c]
  double form_subtracted = 0;  // (1/8pi^2) Int eps_abc w^a ^ Omega^b_c - (3/4pi^2) vol
};

// The boundary invariant of the conical index formula, computed in both of
// its printed forms (they must agree; the identity eps_abc w^a^w^b^w^c =
// 6 dvol makes the second a rearrangement of the first).
AlphaResult alpha_invariant(const LinkMetric& link);

double boundary_volume(const LinkMetric& link);

// Worker cap for sweep parallelism (EO_THREADS, default hardware).
int worker_cap();

}  // namespace eo

#endif  // EO_BOUNDARY_HPP
