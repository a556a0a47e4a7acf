#ifndef EO_CURVATURE_HPP
#define EO_CURVATURE_HPP

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eo/forms.hpp"

namespace eo {

struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An orthonormal coframe e^0..e^{n-1} on an n-dimensional chart (n = 3 or 4).
// `fused2` is an optional bulk evaluator producing all coefficient jets in a
// single pass; when absent the per-component ScalarFields are used.
struct Coframe {
  int n = 4;
  double orientation = 1.0;
  std::vector<DifferentialForm> e;
  std::function<void(const std::array<Jet2, 4>&,
                     std::array<std::array<Jet2, 4>, 4>&)>
      fused2;
};

// Everything the structure equations yield at a single chart point.
//
// Conventions: de^a + omega^a_b ^ e^b = 0 with omega antisymmetric;
// Omega^a_b = d omega^a_b + omega^a_c ^ omega^c_b; frame components satisfy
// Omega^a_b = 1/2 R[a][b][c][d] e^c ^ e^d.  The unit round sphere then has
// R[a][b][a][b] = +1.
struct FramePoint {
  int n = 4;
  double orientation = 1.0;
  Point p{};
  std::array<std::array<double, 4>, 4> E{};     // e^a = E[a][mu] dx^mu
  std::array<std::array<double, 4>, 4> Einv{};  // dx^mu = Einv[mu][a] e^a
  std::array<std::array<std::array<Jet1, 4>, 4>, 4> w{};  // omega^a_b coord comps
  std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};  // frame comps
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> R{};

  // Scalar curvature, sum of sectional pairs.
  double scalar() const {
    double s = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) s += R[a][b][a][b];
    return s;
  }
  std::array<std::array<double, 4>, 4> ricci() const {
    std::array<std::array<double, 4>, 4> ric{};
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        double s = 0;
        for (int a = 0; a < n; ++a) s += R[a][b][a][d];
        ric[b][d] = s;
      }
    return ric;
  }
};

// Pointwise connection matrix omega^a_b = gamma[a][b][c] e^c, also carried in
// coordinate components.
struct ConnectionMatrix {
  int n = 4;
  std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};
  std::array<std::array<std::array<double, 4>, 4>, 4> coord{};  // [a][b][mu]
};

// Pointwise curvature matrix in frame and coordinate components.
struct CurvatureMatrix {
  int n = 4;
  double orientation = 1.0;
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> frame{};
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> coord{};

  TwoFormFrame two_form(int a, int b) const {
    TwoFormFrame f;
    for (int i = 0; i < 6; ++i) {
      auto [c, d] = TwoFormFrame::kPairs[i];
      f.c[i] = frame[a][b][c][d];
    }
    return f;
  }
};

// Pointwise (W+, W-, Z, S) decomposition of a 4-dimensional curvature tensor.
// W+/W- are the self-dual and anti-self-dual Weyl operators expressed in the
// normalized bases (e0^ei +/- *(e0^ei))/sqrt(2); norms are chosen so that the
// Gauss-Bonnet density is (|W|^2 - |Z|^2 + S^2/24)/(8 pi^2).
struct CurvatureDecomp4 {
  double S = 0;
  double orientation = 1.0;
  std::array<std::array<double, 4>, 4> Z{};
  std::array<std::array<double, 3>, 3> Wplus{};
  std::array<std::array<double, 3>, 3> Wminus{};

  // Normalized so the Gauss-Bonnet density is exactly
  // (|W|^2 - |Z|^2 + S^2/24) / (8 pi^2): |Z|^2 = (1/2) sum Z_ab^2.
  double norm2_Z() const {
    double s = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) s += Z[a][b] * Z[a][b];
    return 0.5 * s;
  }
  double norm2_Wplus() const { return frob3(Wplus); }
  double norm2_Wminus() const { return frob3(Wminus); }
  double norm2_W() const { return norm2_Wplus() + norm2_Wminus(); }

 private:
  static double frob3(const std::array<std::array<double, 3>, 3>& m) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += m[i][j] * m[i][j];
    return s;
  }
};

// Solves the first structure equation pointwise (Koszul-type linear solve on
// the n^2(n-1)/2 independent connection coefficients, in jet arithmetic so
// the curvature can be assembled afterwards).
FramePoint frame_point(const Coframe& cf, const Point& p);

ConnectionMatrix solve_connection(const Coframe& cf, const Point& p);
CurvatureMatrix curvature_matrix(const Coframe& cf, const Point& p);
CurvatureMatrix curvature_matrix(const FramePoint& fp);

CurvatureDecomp4 decompose4(const CurvatureMatrix& omega);

// Rebuilds the frame curvature tensor from a decomposition (test oracle for
// the reconstruction invariant).
std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>
reconstruct4(const CurvatureDecomp4& d);

// Max residual of de^a + omega^a_b ^ e^b over coordinate two-form components.
double structure_residual(const Coframe& cf, const FramePoint& fp);

class CohomOneMetric;
// Max frame-component norm of Ric - (S/4) g over radial samples.
double einstein_residual(const CohomOneMetric& g, int sample_count);

}  // namespace eo

#endif  // EO_CURVATURE_HPP
