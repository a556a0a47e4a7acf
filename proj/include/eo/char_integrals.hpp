#ifndef EO_CHAR_INTEGRALS_HPP
#define EO_CHAR_INTEGRALS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "eo/curvature.hpp"
#include "eo/metrics.hpp"

namespace eo {

struct OrbitInvarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::vector<double> rmax_schedule{1e2, 1e3, 1e4};
  int orbit_samples = 8;
  double singular_margin = 1e-6;
  // Adaptive bisection depth per decade segment.  Identically-zero
  // integrands always recurse fully (the relative criterion never
  // triggers), so calibration runs on flat space pass a smaller depth.
  int max_depth = 11;
};

// The two degree-2 invariant polynomials of SO(4) used here, normalized so
// evaluation on (Omega, Omega) gives the Euler/signature integrands with
// their 1/(32 pi^2) and -1/(24 pi^2) prefactors built in.
enum class PolyTag { Pfaffian4, P1Over3 };

// n x n matrix with differential-form values as entries (frame components).
struct MatrixForm {
  int n = 4;
  std::array<std::array<FormValue, 4>, 4> m{};
};

// Polarized evaluation P(A, B); symmetric and bilinear in the slots.
FormValue invariant_poly(PolyTag tag, const MatrixForm& A, const MatrixForm& B);

inline double eps4(int a, int b, int c, int d) {
  return double((b - a) * (c - a) * (d - a) * (c - b) * (d - b) * (d - c)) /
         12.0;
}

// Pointwise densities with respect to the Riemannian volume form.
double pfaffian_density(const CurvatureMatrix& om);
double pfaffian_density(const CurvatureDecomp4& dec);
double signature_density(const CurvatureMatrix& om);
double signature_density(const CurvatureDecomp4& dec);

struct IntegralResult {
  double value = 0;
  double error = 0;
};

// Radial quadrature of density * orbit volume over [r0 + margin, rmax],
// after validating orbit invariance of the integrand by random sampling.
IntegralResult integrate(const CohomOneMetric& g,
                         const std::function<double(const FramePoint&)>& density,
                         double rmax, const QuadratureSpec& spec = {});

struct ConvergenceRow {
  double rmax = 0;
  double value = 0;
  double error = 0;
};
struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double extrapolated = 0;
  double est_order = 0;  // fitted power of 1/rmax; 0 when already converged
};

ConvergenceTable integrate_schedule(const CohomOneMetric& g,
                                    const std::function<double(const FramePoint&)>& density,
                                    const QuadratureSpec& spec = {});

// Data of the hypersurface x = eps (equivalently r = R), pulled back to the
// orbit in orthonormal-frame components.  `theta_raw` is the connection
// difference omega - omega_0 as delivered by the structure equations; the
// classically signed second fundamental form lives in boundary_invariants.
struct HypersurfaceCS {
  double radius = 0;
  double eps = 0;
  double orbit_volume = 0;
  double normal_sign = 1.0;   // +1 end at infinity, -1 cusp end at x -> 0
  double orientation = 1.0;
  MatrixForm theta_raw;  // 1-forms
  MatrixForm omega0;     // frozen product connection, 1-forms
  MatrixForm domega;     // d omega, 2-forms
  MatrixForm domega0;    // d omega_0, 2-forms
  MatrixForm Omega;      // curvature of g, 2-forms
};

HypersurfaceCS hypersurface_cs_data(const CohomOneMetric& g, double R);

// Integral over the hypersurface of a 3-form given in frame components,
// oriented outward-normal-first.
double integrate_boundary_form(const HypersurfaceCS& h, const FormValue& w);

// Explicit dimension-4 Chern-Simons boundary integrals.  Calibration: on the
// round sphere bounding a flat ball the Euler term integrates to -1, making
// chi(N) = Int Pf - Int Q the working identity.
double cs_euler_explicit(const HypersurfaceCS& h);
double cs_signature_explicit(const HypersurfaceCS& h);

// Generic Chern-Weil transgression Q = k Int_0^1 P(theta, Omega_t, ...) dt,
// integrated over the hypersurface; agrees with the explicit forms above.
double transgression_cs(PolyTag tag, const HypersurfaceCS& h, int t_nodes = 8);

}  // namespace eo

#endif  // EO_CHAR_INTEGRALS_HPP
