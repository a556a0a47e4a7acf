#include <cmath>
#include <random>

#include "doctest.h"
#include "eo/char_integrals.hpp"

using namespace eo;

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1e-30, std::abs(a), std::abs(b)});
}

std::vector<CohomOneMetric> density_metrics() {
  return {flat_r4(),
          round_s4(1.0),
          taub_nut(1.0),
          eguchi_hanson(1.0),
          euclidean_schwarzschild(1.0),
          model_fibered_boundary(1, "S2", 2 * M_PI)};
}

}  // namespace

TEST_CASE("pointwise densities: flat space vanishes, unit S4 pins the values") {
  CohomOneMetric fl = flat_r4();
  auto fp = frame_point(fl.coframe(), fl.orbit_point(1.7));
  CHECK(std::abs(pfaffian_density(curvature_matrix(fp))) < 1e-12);
  CHECK(std::abs(signature_density(curvature_matrix(fp))) < 1e-12);

  CohomOneMetric s4 = round_s4(1.0);
  auto fp4 = frame_point(s4.coframe(), s4.orbit_point(1.0));
  // Gauss-Bonnet density of the unit S4: 2 / vol(S4) = 3 / (4 pi^2).
  CHECK(pfaffian_density(curvature_matrix(fp4)) ==
        doctest::Approx(3.0 / (4 * M_PI * M_PI)).epsilon(1e-10));
  CHECK(std::abs(signature_density(curvature_matrix(fp4))) < 1e-10);
}

TEST_CASE("epsilon-tensor densities equal their (W, Z, S) expressions") {
  std::mt19937 rng(42);
  for (const auto& g : density_metrics()) {
    Coframe cf = g.coframe();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      double t = u(rng);
      double r = g.sample_rlo * std::pow(std::min(g.sample_rhi, 30.0) / g.sample_rlo, t);
      Point p = g.orbit_point_random(r, rng);
      auto om = curvature_matrix(frame_point(cf, p));
      auto dec = decompose4(om);
      // Relative to the curvature scale (the densities themselves may cancel
      // to zero pointwise), with an absolute floor at rounding noise.
      double scale =
          (dec.norm2_W() + dec.norm2_Z() + dec.S * dec.S / 24) / (8 * M_PI * M_PI);
      auto close = [&](double a, double b) {
        return std::abs(a - b) <=
               std::max(1e-9 * std::max({std::abs(a), std::abs(b), scale}), 1e-12);
      };
      CHECK(close(pfaffian_density(om), pfaffian_density(dec)));
      CHECK(close(signature_density(om), signature_density(dec)));
    }
  }
}

TEST_CASE("invariant polynomials are conjugation invariant") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_matrix_form = [&](int degree) {
    MatrixForm A;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        FormValue v;
        v.dim = 4;
        v.degree = degree;
        for (unsigned m = 0; m < 16; ++m)
          if (multiindex::popcount(m) == degree) v.c[m] = u(rng);
        A.m[a][b] = v;
        FormValue w = v;
        for (auto& c : w.c) c = -c;
        A.m[b][a] = w;
      }
    return A;
  };
  auto conjugate = [](const MatrixForm& A, const std::array<std::array<double, 4>, 4>& g) {
    MatrixForm R;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        FormValue acc;
        acc.dim = 4;
        acc.degree = A.m[0][1].degree;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int m = 0; m < 16; ++m) acc.c[m] += g[a][i] * A.m[i][j].c[m] * g[b][j];
        R.m[a][b] = acc;
      }
    return R;
  };
  auto random_orthogonal = [&]() {
    // Gram-Schmidt on a random matrix.
    std::array<std::array<double, 4>, 4> q{};
    for (auto& row : q)
      for (auto& v : row) v = u(rng);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < i; ++j) {
        double dot = 0;
        for (int k = 0; k < 4; ++k) dot += q[i][k] * q[j][k];
        for (int k = 0; k < 4; ++k) q[i][k] -= dot * q[j][k];
      }
      double n = 0;
      for (int k = 0; k < 4; ++k) n += q[i][k] * q[i][k];
      n = std::sqrt(n);
      for (int k = 0; k < 4; ++k) q[i][k] /= n;
    }
    // Special orthogonal: the Pfaffian is an SO(4) invariant, not O(4).
    double det = q[0][0] * (q[1][1] * (q[2][2] * q[3][3] - q[2][3] * q[3][2]) -
                            q[1][2] * (q[2][1] * q[3][3] - q[2][3] * q[3][1]) +
                            q[1][3] * (q[2][1] * q[3][2] - q[2][2] * q[3][1]));
    det -= q[0][1] * (q[1][0] * (q[2][2] * q[3][3] - q[2][3] * q[3][2]) -
                      q[1][2] * (q[2][0] * q[3][3] - q[2][3] * q[3][0]) +
                      q[1][3] * (q[2][0] * q[3][2] - q[2][2] * q[3][0]));
    det += q[0][2] * (q[1][0] * (q[2][1] * q[3][3] - q[2][3] * q[3][1]) -
                      q[1][1] * (q[2][0] * q[3][3] - q[2][3] * q[3][0]) +
                      q[1][3] * (q[2][0] * q[3][1] - q[2][1] * q[3][0]));
    det -= q[0][3] * (q[1][0] * (q[2][1] * q[3][2] - q[2][2] * q[3][1]) -
                      q[1][1] * (q[2][0] * q[3][2] - q[2][2] * q[3][0]) +
                      q[1][2] * (q[2][0] * q[3][1] - q[2][1] * q[3][0]));
    if (det < 0)
      for (int k = 0; k < 4; ++k) q[0][k] = -q[0][k];
    return q;
  };

  for (int trial = 0; trial < 20; ++trial) {
    MatrixForm A = random_matrix_form(2), B = random_matrix_form(2);
    auto g = random_orthogonal();
    for (auto tag : {PolyTag::Pfaffian4, PolyTag::P1Over3}) {
      FormValue p0 = invariant_poly(tag, A, B);
      FormValue p1 = invariant_poly(tag, conjugate(A, g), conjugate(B, g));
      for (int m = 0; m < 16; ++m) CHECK(std::abs(p0.c[m] - p1.c[m]) < 1e-10);
      // Symmetry of the polarized form.
      FormValue p2 = invariant_poly(tag, B, A);
      for (int m = 0; m < 16; ++m) CHECK(std::abs(p0.c[m] - p2.c[m]) < 1e-12);
    }
  }
}

TEST_CASE("integrate: flat ball zero, unit S4 Gauss-Bonnet") {
  QuadratureSpec spec;
  QuadratureSpec zero_spec;  // pointwise-zero integrands recurse fully
  zero_spec.max_depth = 7;
  auto pf = [](const FramePoint& fp) { return pfaffian_density(curvature_matrix(fp)); };
  auto sig = [](const FramePoint& fp) { return signature_density(curvature_matrix(fp)); };

  IntegralResult flat = integrate(flat_r4(), pf, 10.0, zero_spec);
  CHECK(std::abs(flat.value) < 1e-10);

  IntegralResult s4 = integrate(round_s4(1.0), pf, 10.0, spec);
  CHECK(s4.value == doctest::Approx(2.0).epsilon(1e-8));
  IntegralResult s4sig = integrate(round_s4(1.0), sig, 10.0, zero_spec);
  CHECK(std::abs(s4sig.value) < 1e-10);
}

TEST_CASE("integrate validates orbit invariance") {
  // A deliberately orbit-dependent integrand must be rejected.
  CohomOneMetric g = flat_r4();
  auto bad = [](const FramePoint& fp) { return fp.p[1]; };
  CHECK_THROWS_AS(integrate(g, bad, 10.0, QuadratureSpec{}), OrbitInvarianceError);
}

TEST_CASE("taub-nut euler integral converges to chi = 1") {
  auto pf = [](const FramePoint& fp) { return pfaffian_density(curvature_matrix(fp)); };
  QuadratureSpec spec;
  ConvergenceTable t = integrate_schedule(taub_nut(1.0), pf, spec);
  REQUIRE(t.rows.size() == 3);
  // Convergence toward 1; the two largest truncations already sit at the
  // quadrature noise floor, so only the first step is compared.
  CHECK(std::abs(t.rows[0].value - 1.0) > std::abs(t.rows[1].value - 1.0));
  CHECK(std::abs(t.rows[2].value - 1.0) < 1e-6);
  CHECK(t.extrapolated == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("flat-ball Chern-Simons calibration: Int Q = -1, radius independent") {
  CohomOneMetric g = flat_r4();
  for (double R : {1.0, 2.0, 5.0}) {
    HypersurfaceCS h = hypersurface_cs_data(g, R);
    double q = cs_euler_explicit(h);
    CHECK(q == doctest::Approx(-1.0).epsilon(1e-8));
    // chi(B^4) = Int Pf - Int Q = 0 - (-1) = 1.
    CHECK(std::abs(cs_signature_explicit(h)) < 1e-12);  // flat curvature
  }
}

TEST_CASE("umbilic hand-oracle reproduces the theta^3 term") {
  // Round S^3 of radius R in flat space: theta_raw^0_i = -(1/R) e^i, flat
  // Omega; the epsilon contraction of theta^3 is then -12 (1/R)^3 dvol3 with
  // the raw sign, and Int Q = -(1/(32 pi^2)) (4/3) (-12/R^3) vol(S^3_R)
  // ... = -1 after the (4/3) subtraction sign.
  double R = 2.0;
  HypersurfaceCS h;
  h.radius = R;
  h.eps = 1.0 / R;
  h.orbit_volume = 2 * M_PI * M_PI * R * R * R;
  h.normal_sign = 1.0;
  h.orientation = 1.0;
  for (int i = 1; i < 4; ++i) {
    FormValue up, down;
    up.dim = down.dim = 4;
    up.degree = down.degree = 1;
    up.c[1u << i] = -1.0 / R;
    down.c[1u << i] = 1.0 / R;
    h.theta_raw.m[0][i] = up;
    h.theta_raw.m[i][0] = down;
  }
  CHECK(cs_euler_explicit(h) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("generic transgression equals the explicit dim-4 formulas") {
  std::vector<std::pair<CohomOneMetric, std::vector<double>>> cases = {
      {taub_nut(1.0), {5.0, 10.0, 20.0}},
      {euclidean_schwarzschild(1.0), {3.0, 5.0, 8.0}},
      {eguchi_hanson(1.0), {1.5, 2.0, 3.0, 5.0}},
  };
  int count = 0;
  for (const auto& [g, radii] : cases)
    for (double R : radii) {
      HypersurfaceCS h = hypersurface_cs_data(g, R);
      CHECK(std::abs(transgression_cs(PolyTag::Pfaffian4, h) - cs_euler_explicit(h)) <
            1e-10);
      CHECK(std::abs(transgression_cs(PolyTag::P1Over3, h) - cs_signature_explicit(h)) <
            1e-10);
      ++count;
    }
  CHECK(count == 10);

  // Identical connections give a vanishing transgression.
  HypersurfaceCS h0 = hypersurface_cs_data(flat_r4(), 2.0);
  for (auto& row : h0.theta_raw.m)
    for (auto& v : row) v = FormValue{};
  CHECK(std::abs(transgression_cs(PolyTag::Pfaffian4, h0)) < 1e-14);
  CHECK(std::abs(transgression_cs(PolyTag::P1Over3, h0)) < 1e-14);
}

TEST_CASE("transgression identity on a slab: Int (P(Omega') - P(Omega)) = boundary difference") {
  // Compare Taub-NUT against the product metric frozen at the inner radius,
  // over the slab r in [R1, R2].
  CohomOneMetric g = taub_nut(1.0);
  double R1 = 4.0, R2 = 7.0;
  CohomOneMetric frozen = g;
  // Freeze warpings at R1 by composing with a constant radial coordinate.
  double grr = 1.0 + 2.0 / R1;
  double ab = R1 * std::sqrt(grr);
  double c = 2.0 / std::sqrt(grr);
  frozen.g_rr = grr;
  frozen.f1 = frozen.f2 = ab;
  frozen.f3 = c;
  frozen.einstein = false;
  frozen.name = "taub-nut-frozen";

  auto pf_g = [](const FramePoint& fp) { return pfaffian_density(curvature_matrix(fp)); };

  // The slab integral of each characteristic form.
  Coframe cf_g = g.coframe(), cf_f = frozen.coframe();
  auto integral_over_slab = [&](const Coframe& cf, const CohomOneMetric& vol_of) {
    double acc = 0;
    int N = 4000;  // plain Simpson is fine for a smooth slab
    for (int i = 0; i <= N; ++i) {
      double r = R1 + (R2 - R1) * i / double(N);
      double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * pf_g(frame_point(cf, vol_of.orbit_point(r))) *
             vol_of.radial_weight(r) * vol_of.orbit_volume(r);
    }
    return acc * (R2 - R1) / (3.0 * N);
  };
  double lhs = integral_over_slab(cf_g, g) - integral_over_slab(cf_f, frozen);

  // Boundary term: Q(omega_g, omega_frozen) at both slab faces, outward
  // first.  The frozen metric's frame differs from g's away from R1; its
  // connection forms are re-expanded in g's coframe before subtracting
  // (the bundle identification maps frame legs to frame legs).
  auto q_at = [&](double R) {
    Point p = g.orbit_point(R);
    FramePoint fg = frame_point(cf_g, p);
    FramePoint ff = frame_point(cf_f, p);
    HypersurfaceCS h;
    h.radius = R;
    h.orbit_volume = g.orbit_volume(R);
    h.normal_sign = 1.0;
    h.orientation = 1.0;
    double T[4][4] = {};  // e^c_frozen = T[c][d] e^d_g on the tangent legs
    for (int c = 1; c < 4; ++c)
      for (int d = 1; d < 4; ++d) {
        double acc = 0;
        for (int mu = 1; mu < 4; ++mu) acc += ff.E[c][mu] * fg.Einv[mu][d];
        T[c][d] = acc;
      }
    auto frozen_in_g_frame = [&](int a, int b, int d) {
      double acc = 0;
      for (int c = 1; c < 4; ++c) acc += ff.gamma[a][b][c] * T[c][d];
      return acc;
    };
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        FormValue th, om0;
        th.dim = om0.dim = 4;
        th.degree = om0.degree = 1;
        for (int d = 1; d < 4; ++d) {
          double w0 = frozen_in_g_frame(a, b, d);
          th.c[1u << d] = fg.gamma[a][b][d] - w0;
          om0.c[1u << d] = w0;
        }
        h.theta_raw.m[a][b] = th;
        h.omega0.m[a][b] = om0;
        FormValue d0, dg_;
        d0.dim = dg_.dim = 4;
        d0.degree = dg_.degree = 2;
        for (int cdir = 1; cdir < 4; ++cdir)
          for (int ddir = cdir + 1; ddir < 4; ++ddir) {
            double accg = 0, accf = 0;
            for (int mu = 0; mu < 4; ++mu)
              for (int nu = 0; nu < 4; ++nu) {
                accg += (fg.w[a][b][nu].d[mu] - fg.w[a][b][mu].d[nu]) *
                        fg.Einv[mu][cdir] * fg.Einv[nu][ddir];
                accf += (ff.w[a][b][nu].d[mu] - ff.w[a][b][mu].d[nu]) *
                        fg.Einv[mu][cdir] * fg.Einv[nu][ddir];
              }
            dg_.c[(1u << cdir) | (1u << ddir)] = accg;
            d0.c[(1u << cdir) | (1u << ddir)] = accf;
          }
        h.domega.m[a][b] = dg_;
        h.domega0.m[a][b] = d0;
      }
    return transgression_cs(PolyTag::Pfaffian4, h);
  };
  double rhs = q_at(R2) - q_at(R1);
  CHECK(std::abs(lhs - rhs) < 1e-6);
}
