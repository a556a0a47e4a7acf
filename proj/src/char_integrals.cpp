#include "eo/char_integrals.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace eo {

namespace {

// Wedge of frame-component form values (mask algebra over the frame legs).
FormValue wedge_value(const FormValue& a, const FormValue& b) {
  FormValue r;
  r.dim = a.dim;
  r.degree = a.degree + b.degree;
  for (unsigned ma = 0; ma < 16; ++ma) {
    if (a.c[ma] == 0.0) continue;
    for (unsigned mb = 0; mb < 16; ++mb) {
      if (b.c[mb] == 0.0) continue;
      int s = multiindex::merge_sign(ma, mb);
      if (s == 0) continue;
      r.c[ma | mb] += s * a.c[ma] * b.c[mb];
    }
  }
  return r;
}

FormValue scaled(const FormValue& a, double s) {
  FormValue r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

void accumulate(FormValue& into, const FormValue& a, double s = 1.0) {
  for (int i = 0; i < 16; ++i) into.c[i] += s * a.c[i];
}

// Coefficient of e^0^e^1^e^2^e^3 of a product of two frame two-forms.
double wedge_top4(const TwoFormFrame& f, const TwoFormFrame& g) {
  return f.c[0] * g.c[5] - f.c[1] * g.c[4] + f.c[2] * g.c[3] +
         f.c[5] * g.c[0] - f.c[4] * g.c[1] + f.c[3] * g.c[2];
}

constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

// 8-point Gauss-Legendre nodes/weights on [0, 1]; the transgression
// integrand is quadratic in t, so this is exact with wide margin.
constexpr int kGL = 8;
constexpr double kGLx[kGL] = {0.01985507175123188, 0.10166676129318664,
                              0.2372337950418355,  0.40828267875217505,
                              0.59171732124782495, 0.7627662049581645,
                              0.89833323870681336, 0.98014492824876812};
constexpr double kGLw[kGL] = {0.05061426814518813, 0.11119051722668724,
                              0.15685332293894364, 0.18134189168918099,
                              0.18134189168918099, 0.15685332293894364,
                              0.11119051722668724, 0.05061426814518813};

}  // namespace

FormValue invariant_poly(PolyTag tag, const MatrixForm& A, const MatrixForm& B) {
  FormValue out;
  out.dim = 4;
  const int n = A.n;
  if (tag == PolyTag::Pfaffian4) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (b == a) continue;
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double e = eps4(a, b, c, d);
            if (e == 0.0) continue;
            accumulate(out, wedge_value(A.m[a][b], B.m[c][d]),
                       e / (32.0 * M_PI * M_PI));
          }
      }
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        accumulate(out, wedge_value(A.m[a][b], B.m[b][a]),
                   -1.0 / (24.0 * M_PI * M_PI));
  }
  return out;
}

double pfaffian_density(const CurvatureMatrix& om) {
  double acc = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double e = eps4(a, b, c, d);
          if (e == 0.0) continue;
          acc += e * wedge_top4(om.two_form(a, b), om.two_form(c, d));
        }
    }
  // Orientation-invariant: the epsilon tensor and the volume form flip
  // together under orientation reversal.
  return acc / (32.0 * M_PI * M_PI);
}

double pfaffian_density(const CurvatureDecomp4& dec) {
  return (dec.norm2_W() - dec.norm2_Z() + dec.S * dec.S / 24.0) /
         (8.0 * M_PI * M_PI);
}

double signature_density(const CurvatureMatrix& om) {
  double acc = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      acc += wedge_top4(om.two_form(a, b), om.two_form(b, a));
  return -om.orientation * acc / (24.0 * M_PI * M_PI);
}

double signature_density(const CurvatureDecomp4& dec) {
  return (dec.norm2_Wplus() - dec.norm2_Wminus()) / (12.0 * M_PI * M_PI);
}

IntegralResult integrate(const CohomOneMetric& g,
                         const std::function<double(const FramePoint&)>& density,
                         double rmax, const QuadratureSpec& spec) {
  Coframe cf = g.coframe();
  double lo = g.r0 + spec.singular_margin;
  double hi = std::isfinite(g.r1) ? g.r1 - spec.singular_margin : rmax;

  // Orbit invariance: the density must not depend on the orbit point.
  // Sample radii stay well inside the domain; at the singular margin the
  // structure-equation solve loses digits and would mask the check.
  {
    std::mt19937 rng(911);
    for (double t : {0.45, 0.7, 0.92}) {
      double r = lo * std::pow(hi / lo, t);
      double ref = density(frame_point(cf, g.orbit_point(r)));
      for (int k = 0; k < spec.orbit_samples; ++k) {
        Point q = g.orbit_point_random(r, rng);
        double v = density(frame_point(cf, q));
        if (std::abs(v - ref) > 1e-8 * std::max(1.0, std::abs(ref)))
          throw OrbitInvarianceError(
              "integrand is not orbit-invariant; metric outside the "
              "supported cohomogeneity-one class");
      }
    }
  }

  auto f = [&](double r) {
    return density(frame_point(cf, g.orbit_point(r))) * g.radial_weight(r) *
           g.orbit_volume(r);
  };
  // Decade segments keep the adaptive bisection focused; a single interval
  // spanning [r0, 1e4] starves the region near the inner boundary.
  double value = 0, error = 0;
  double a = lo;
  while (a < hi) {
    double b = std::min(hi, std::max(a * 10.0, lo + 1.0));
    // Segments whose integrand is zero at working precision (flat space,
    // pointwise-vanishing signature densities, far tails) would otherwise
    // recurse to full depth chasing the relative tolerance.
    double probe = 0;
    for (int k = 0; k <= 8; ++k)
      probe = std::max(probe, std::abs(f(a + (b - a) * k / 8.0)));
    if (probe * (b - a) < 1e-3 * spec.abs_tol) {
      error += probe * (b - a);
      a = b;
      continue;
    }
    double seg_err = 0, seg = 0;
    if (a == lo) {
      // Bolt edges carry sqrt(r - r0) warpings; r = r0 + u^2 smooths them.
      // Starting at u = 0 also recovers the singular-margin sliver, since
      // Gauss-Kronrod never evaluates the endpoints themselves.
      double u1 = std::sqrt(b - g.r0);
      auto fu = [&](double u) { return 2.0 * u * f(g.r0 + u * u); };
      seg = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          fu, 0.0, u1, spec.max_depth, spec.rel_tol, &seg_err);
    } else {
      seg = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, spec.max_depth, spec.rel_tol, &seg_err);
    }
    if (!std::isfinite(seg))
      throw NonConvergenceError("radial quadrature did not converge");
    value += seg;
    error += seg_err;
    a = b;
  }
  return {value, std::max(error, spec.abs_tol)};
}

ConvergenceTable integrate_schedule(const CohomOneMetric& g,
                                    const std::function<double(const FramePoint&)>& density,
                                    const QuadratureSpec& spec) {
  ConvergenceTable table;
  for (double rmax : spec.rmax_schedule) {
    IntegralResult r = integrate(g, density, rmax, spec);
    table.rows.push_back({rmax, r.value, r.error});
  }
  const auto& rows = table.rows;
  size_t n = rows.size();
  if (n < 3) {
    table.extrapolated = rows.back().value;
    return table;
  }
  double d1 = rows[n - 2].value - rows[n - 3].value;
  double d2 = rows[n - 1].value - rows[n - 2].value;
  double ratio_r = rows[n - 1].rmax / rows[n - 2].rmax;
  if (std::abs(d2) < 1e-14 || std::abs(d1) < 1e-14 || d2 / d1 <= 0) {
    table.extrapolated = rows.back().value;  // already at the noise floor
    table.est_order = 0;
    return table;
  }
  double q = d2 / d1;  // = ratio_r^{-p}
  table.est_order = -std::log(q) / std::log(ratio_r);
  table.extrapolated = rows.back().value + d2 * q / (1.0 - q);
  return table;
}

HypersurfaceCS hypersurface_cs_data(const CohomOneMetric& g, double R) {
  HypersurfaceCS h;
  h.radius = R;
  h.eps = g.end_at_zero ? R : 1.0 / R;
  h.orbit_volume = g.orbit_volume(R);
  h.normal_sign = g.end_at_zero ? -1.0 : 1.0;

  Coframe cf = g.coframe();
  Coframe cf0 = g.frozen_coframe(R);
  Point p = g.orbit_point(R);
  FramePoint fg = frame_point(cf, p);
  FramePoint f0 = frame_point(cf0, p);
  h.orientation = fg.orientation;

  const int n = 4;
  auto one_form = [&](auto&& comp) {
    FormValue v;
    v.dim = 4;
    v.degree = 1;
    for (int c = 1; c < n; ++c) v.c[1u << c] = comp(c);
    return v;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      h.theta_raw.m[a][b] =
          one_form([&](int c) { return fg.gamma[a][b][c] - f0.gamma[a][b][c]; });
      h.omega0.m[a][b] = one_form([&](int c) { return f0.gamma[a][b][c]; });
    }

  // d omega in coordinates from the connection jets, converted to frame
  // components and restricted to the tangent legs.
  auto dconn = [&](const FramePoint& fp) {
    MatrixForm out;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        FormValue v;
        v.dim = 4;
        v.degree = 2;
        for (int c = 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            double acc = 0;
            // (d omega)(E_c, E_d): contract the full antisymmetric
            // coordinate array with the frame vectors, no 1/2.
            for (int mu = 0; mu < n; ++mu)
              for (int nu = 0; nu < n; ++nu) {
                double dw = fp.w[a][b][nu].d[mu] - fp.w[a][b][mu].d[nu];
                acc += 0.5 * dw * (fg.Einv[mu][c] * fg.Einv[nu][d] -
                                   fg.Einv[mu][d] * fg.Einv[nu][c]);
              }
            v.c[(1u << c) | (1u << d)] = acc;
          }
        out.m[a][b] = v;
      }
    return out;
  };
  h.domega = dconn(fg);
  h.domega0 = dconn(f0);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      FormValue v;
      v.dim = 4;
      v.degree = 2;
      for (int c = 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          v.c[(1u << c) | (1u << d)] = fg.R[a][b][c][d];
      h.Omega.m[a][b] = v;
    }
  return h;
}

double integrate_boundary_form(const HypersurfaceCS& h, const FormValue& w) {
  unsigned tangent_mask = 0b1110;
  return h.normal_sign * h.orientation * w.c[tangent_mask] * h.orbit_volume;
}

double cs_euler_explicit(const HypersurfaceCS& h) {
  FormValue acc;
  acc.dim = 4;
  acc.degree = 3;
  const auto& th = h.theta_raw;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double e = eps4(a, b, c, d);
          if (e == 0.0) continue;
          accumulate(acc, wedge_value(th.m[a][b], h.Omega.m[c][d]), 2.0 * e);
          FormValue cube;
          cube.dim = 4;
          for (int k = 0; k < 4; ++k)
            accumulate(cube, wedge_value(th.m[c][k], th.m[k][d]));
          accumulate(acc, wedge_value(th.m[a][b], cube), -(4.0 / 3.0) * e);
        }
    }
  // The epsilon tensor refers to the oriented frame, hence the extra
  // orientation factor (the Euler correction is orientation invariant).
  return integrate_boundary_form(
      h, scaled(acc, h.orientation / (32.0 * M_PI * M_PI)));
}

double cs_signature_explicit(const HypersurfaceCS& h) {
  FormValue acc;
  acc.dim = 4;
  acc.degree = 3;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      accumulate(acc, wedge_value(h.theta_raw.m[a][b], h.Omega.m[b][a]));
  return integrate_boundary_form(h, scaled(acc, -1.0 / (24.0 * M_PI * M_PI)));
}

double transgression_cs(PolyTag tag, const HypersurfaceCS& h, int t_nodes) {
  if (t_nodes < 3)
    throw std::invalid_argument("transgression_cs: need at least 3 t-nodes");
  (void)t_nodes;  // GL8 is exact for the quadratic-in-t integrand
  FormValue acc;
  acc.dim = 4;
  acc.degree = 3;
  for (int k = 0; k < kGL; ++k) {
    double t = kGLx[k];
    MatrixForm omega_t, Omega_t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        FormValue v = h.omega0.m[a][b];
        accumulate(v, h.theta_raw.m[a][b], t);
        omega_t.m[a][b] = v;
      }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        FormValue v = h.domega0.m[a][b];
        accumulate(v, h.domega.m[a][b], t);
        accumulate(v, h.domega0.m[a][b], -t);
        for (int c = 0; c < 4; ++c)
          accumulate(v, wedge_value(omega_t.m[a][c], omega_t.m[c][b]));
        Omega_t.m[a][b] = v;
      }
    double orient = tag == PolyTag::Pfaffian4 ? h.orientation : 1.0;
    accumulate(acc, invariant_poly(tag, h.theta_raw, Omega_t),
               2.0 * kGLw[k] * orient);
  }
  return integrate_boundary_form(h, acc);
}

}  // namespace eo
