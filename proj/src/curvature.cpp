#include "eo/curvature.hpp"

#include <cmath>

#include "eo/linalg.hpp"
#include "eo/metrics.hpp"

namespace eo {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

// Index of the unordered pair (a<b) among increasing pairs of 0..n-1.
int pair_index(int n, int a, int b) {
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i == a && j == b) return idx;
      ++idx;
    }
  throw std::logic_error("pair_index: bad pair");
}

void eval_coframe2(const Coframe& cf, const Point& p,
                   std::array<std::array<Jet2, 4>, 4>& E2) {
  auto seeds = seed_point<Jet2>(p, cf.n);
  if (cf.fused2) {
    cf.fused2(seeds, E2);
    return;
  }
  for (int a = 0; a < cf.n; ++a)
    for (int mu = 0; mu < cf.n; ++mu) E2[a][mu] = Jet2(Jet1(0.0));
  for (int a = 0; a < cf.n; ++a)
    for (const auto& [m, f] : cf.e[a].components()) {
      int mu = multiindex::indices(m)[0];
      E2[a][mu] = f.eval_on(seeds);
    }
}

}  // namespace

FramePoint frame_point(const Coframe& cf, const Point& p) {
  const int n = cf.n;
  FramePoint fp;
  fp.n = n;
  fp.orientation = cf.orientation;
  fp.p = p;

  std::array<std::array<Jet2, 4>, 4> E2;
  eval_coframe2(cf, p, E2);

  std::array<std::array<Jet1, 4>, 4> E1{};
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu) {
      E1[a][mu] = E2[a][mu].value;
      fp.E[a][mu] = E1[a][mu].value;
    }

  // Degeneracy is relative to the coframe scale (Hadamard bound); tiny but
  // well-conditioned frames near r = 0 are fine.
  double det = invert_small(fp.E, fp.Einv, n);
  double scale = 1.0;
  for (int a = 0; a < n; ++a) {
    double row = 0;
    for (int mu = 0; mu < n; ++mu) row = std::max(row, std::abs(fp.E[a][mu]));
    scale *= row;
  }
  if (std::abs(det) < 1e-12 * scale || scale == 0.0)
    throw DegeneratePointError("coframe degenerate at evaluation point");

  // Unknowns gamma[(a<b)][c]; equations indexed by (a, mu<nu):
  //   (de^a)_{mu nu} + sum_{b,c} gamma_{ab,c} (e^c ^ e^b)_{mu nu} = 0.
  const int P = pair_count(n);
  const int N = P * n;
  std::vector<Jet1> M(size_t(N) * N, Jet1(0.0));
  std::vector<Jet1> rhs(N, Jet1(0.0));

  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu + 1; nu < n; ++nu) {
        int eq = a * P + pair_index(n, mu, nu);
        rhs[eq] = -(E2[a][nu].d[mu] - E2[a][mu].d[nu]);
        for (int b = 0; b < n; ++b) {
          if (b == a) continue;
          double sgn = a < b ? 1.0 : -1.0;
          int pr = a < b ? pair_index(n, a, b) : pair_index(n, b, a);
          for (int c = 0; c < n; ++c) {
            Jet1 coeff =
                E1[c][mu] * E1[b][nu] - E1[c][nu] * E1[b][mu];
            M[size_t(eq) * N + pr * n + c] =
                M[size_t(eq) * N + pr * n + c] + sgn * coeff;
          }
        }
      }

  std::vector<Jet1> z;
  try {
    z = solve_dense(std::move(M), std::move(rhs), N);
  } catch (const SingularMatrixError&) {
    throw DegeneratePointError("structure equations singular at point");
  }

  std::array<std::array<std::array<Jet1, 4>, 4>, 4> gamma1{};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int pr = pair_index(n, a, b);
      for (int c = 0; c < n; ++c) {
        gamma1[a][b][c] = z[size_t(pr) * n + c];
        gamma1[b][a][c] = -gamma1[a][b][c];
      }
    }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int mu = 0; mu < n; ++mu) {
        Jet1 acc(0.0);
        for (int c = 0; c < n; ++c) acc += gamma1[a][b][c] * E1[c][mu];
        fp.w[a][b][mu] = acc;
        fp.gamma[a][b][mu] = 0;  // filled below (mu reused as frame leg)
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) fp.gamma[a][b][c] = gamma1[a][b][c].value;

  // Omega = d omega + omega ^ omega, first in coordinates, then pulled to
  // frame components with the inverse coframe.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<std::array<double, 4>, 4> oc{};
      for (int mu = 0; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu) {
          double v = fp.w[a][b][nu].d[mu] - fp.w[a][b][mu].d[nu];
          for (int c = 0; c < n; ++c)
            v += fp.w[a][c][mu].value * fp.w[c][b][nu].value -
                 fp.w[a][c][nu].value * fp.w[c][b][mu].value;
          oc[mu][nu] = v;
          oc[nu][mu] = -v;
        }
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = 0;
          for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
              v += oc[mu][nu] * fp.Einv[mu][c] * fp.Einv[nu][d];
          fp.R[a][b][c][d] = v;
        }
    }
  return fp;
}

ConnectionMatrix solve_connection(const Coframe& cf, const Point& p) {
  FramePoint fp = frame_point(cf, p);
  ConnectionMatrix cm;
  cm.n = fp.n;
  cm.gamma = fp.gamma;
  for (int a = 0; a < fp.n; ++a)
    for (int b = 0; b < fp.n; ++b)
      for (int mu = 0; mu < fp.n; ++mu)
        cm.coord[a][b][mu] = fp.w[a][b][mu].value;
  return cm;
}

CurvatureMatrix curvature_matrix(const FramePoint& fp) {
  CurvatureMatrix out;
  out.n = fp.n;
  out.orientation = fp.orientation;
  out.frame = fp.R;
  // Coordinate components reconstructed from the frame ones, with the same
  // normalization Omega = 1/2 coord[mu][nu] dx^mu ^ dx^nu.
  for (int a = 0; a < fp.n; ++a)
    for (int b = 0; b < fp.n; ++b)
      for (int mu = 0; mu < fp.n; ++mu)
        for (int nu = 0; nu < fp.n; ++nu) {
          double v = 0;
          for (int c = 0; c < fp.n; ++c)
            for (int d = 0; d < fp.n; ++d)
              v += fp.R[a][b][c][d] * fp.E[c][mu] * fp.E[d][nu];
          out.coord[a][b][mu][nu] = v;
        }
  return out;
}

CurvatureMatrix curvature_matrix(const Coframe& cf, const Point& p) {
  return curvature_matrix(frame_point(cf, p));
}

namespace {

// Self-dual pair bases: pi_i = (0,i), and duals *(0,i) with signs relative
// to increasing-pair storage: (2,3), (3,1) = -(1,3), (1,2).
struct DualPair {
  int c, d;
  double sign;
};
constexpr std::array<std::array<int, 2>, 3> kPi = {{{0, 1}, {0, 2}, {0, 3}}};
constexpr std::array<DualPair, 3> kPiBar = {{{2, 3, 1.0}, {1, 3, -1.0}, {1, 2, 1.0}}};

}  // namespace

CurvatureDecomp4 decompose4(const CurvatureMatrix& omega) {
  if (omega.n != 4)
    throw std::invalid_argument("decompose4 requires a 4-dimensional chart");
  CurvatureDecomp4 out;
  const auto& R = omega.frame;
  double S = 0;
  std::array<std::array<double, 4>, 4> ric{};
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double s = 0;
      for (int a = 0; a < 4; ++a) s += R[a][b][a][d];
      ric[b][d] = s;
    }
  for (int a = 0; a < 4; ++a) S += ric[a][a];
  out.S = S;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out.Z[a][b] = ric[a][b] - (a == b ? S / 4.0 : 0.0);

  // Weyl part of the frame curvature.
  auto kron = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  auto weyl = [&](int a, int b, int c, int d) {
    double zterm = 0.5 * (kron(a, c) * out.Z[b][d] - kron(a, d) * out.Z[b][c] +
                          kron(b, d) * out.Z[a][c] - kron(b, c) * out.Z[a][d]);
    double sterm = (S / 12.0) * (kron(a, c) * kron(b, d) - kron(a, d) * kron(b, c));
    return R[a][b][c][d] - zterm - sterm;
  };

  double o = omega.orientation;
  out.orientation = o;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double pp = weyl(kPi[i][0], kPi[i][1], kPi[j][0], kPi[j][1]);
      double pb = kPiBar[j].sign * weyl(kPi[i][0], kPi[i][1], kPiBar[j].c, kPiBar[j].d);
      double bp = kPiBar[i].sign * weyl(kPiBar[i].c, kPiBar[i].d, kPi[j][0], kPi[j][1]);
      double bb = kPiBar[i].sign * kPiBar[j].sign *
                  weyl(kPiBar[i].c, kPiBar[i].d, kPiBar[j].c, kPiBar[j].d);
      out.Wplus[i][j] = 0.5 * (pp + o * pb + o * bp + bb);
      out.Wminus[i][j] = 0.5 * (pp - o * pb - o * bp + bb);
    }
  return out;
}

std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>
reconstruct4(const CurvatureDecomp4& d) {
  // Assemble the 6x6 Weyl operator from its chiral blocks, then add the
  // Ricci and scalar Kulkarni-Nomizu pieces.
  std::array<std::array<double, 6>, 6> W6{};
  auto add_pair = [&](int row_c, int row_d, double row_sign, int col_c,
                      int col_d, double col_sign, double v) {
    int r = TwoFormFrame::pair_index(row_c, row_d);
    int c = TwoFormFrame::pair_index(col_c, col_d);
    W6[r][c] += row_sign * col_sign * v;
  };
  double o = d.orientation;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double wp = 0.5 * d.Wplus[i][j];
      double wm = 0.5 * d.Wminus[i][j];
      // (pi + o*pibar)/sqrt2 and (pi - o*pibar)/sqrt2 blocks.
      add_pair(kPi[i][0], kPi[i][1], 1.0, kPi[j][0], kPi[j][1], 1.0, wp + wm);
      add_pair(kPi[i][0], kPi[i][1], 1.0, kPiBar[j].c, kPiBar[j].d,
               kPiBar[j].sign, o * (wp - wm));
      add_pair(kPiBar[i].c, kPiBar[i].d, kPiBar[i].sign, kPi[j][0], kPi[j][1],
               1.0, o * (wp - wm));
      add_pair(kPiBar[i].c, kPiBar[i].d, kPiBar[i].sign, kPiBar[j].c,
               kPiBar[j].d, kPiBar[j].sign, wp + wm);
    }

  auto kron = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> R{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int dd = 0; dd < 4; ++dd) {
          if (a == b || c == dd) continue;
          double sgn = 1.0;
          int aa = a, bb = b, cc = c, ddd = dd;
          if (aa > bb) {
            std::swap(aa, bb);
            sgn = -sgn;
          }
          if (cc > ddd) {
            std::swap(cc, ddd);
            sgn = -sgn;
          }
          double w = sgn * W6[TwoFormFrame::pair_index(aa, bb)]
                           [TwoFormFrame::pair_index(cc, ddd)];
          double zterm =
              0.5 * (kron(a, c) * d.Z[b][dd] - kron(a, dd) * d.Z[b][c] +
                     kron(b, dd) * d.Z[a][c] - kron(b, c) * d.Z[a][dd]);
          double sterm = (d.S / 12.0) *
                         (kron(a, c) * kron(b, dd) - kron(a, dd) * kron(b, c));
          R[a][b][c][dd] = w + zterm + sterm;
        }
  return R;
}

double structure_residual(const Coframe& cf, const FramePoint& fp) {
  // de^a + omega^a_b ^ e^b in coordinate two-form components, using the
  // evaluated jets (so this checks the solve, not a re-derivation).
  const int n = fp.n;
  std::array<std::array<Jet2, 4>, 4> E2;
  eval_coframe2(cf, fp.p, E2);
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu + 1; nu < n; ++nu) {
        double v = E2[a][nu].value.d[mu] - E2[a][mu].value.d[nu];
        for (int b = 0; b < n; ++b)
          v += fp.w[a][b][mu].value * E2[b][nu].value.value -
               fp.w[a][b][nu].value * E2[b][mu].value.value;
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

double einstein_residual(const CohomOneMetric& g, int sample_count) {
  Coframe cf = g.coframe();
  double worst = 0;
  for (const Point& p : g.radial_samples(sample_count)) {
    FramePoint fp = frame_point(cf, p);
    double S = fp.scalar();
    auto ric = fp.ricci();
    for (int a = 0; a < fp.n; ++a)
      for (int b = 0; b < fp.n; ++b) {
        double target = (a == b) ? S / fp.n : 0.0;
        worst = std::max(worst, std::abs(ric[a][b] - target));
      }
  }
  return worst;
}

}  // namespace eo
