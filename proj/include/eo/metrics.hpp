#ifndef EO_METRICS_HPP
#define EO_METRICS_HPP

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "eo/curvature.hpp"
#include "eo/jet.hpp"
#include "eo/topology.hpp"

namespace eo {

struct PerturbationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A radial profile function, evaluable at any jet order (the warpings enter
// coframe coefficients that get differentiated twice).
class RadialFn {
  struct Concept {
    virtual ~Concept() = default;
    virtual double e0(const double&) const = 0;
    virtual Jet1 e1(const Jet1&) const = 0;
    virtual Jet2 e2(const Jet2&) const = 0;
    virtual Jet3 e3(const Jet3&) const = 0;
  };
  template <class F>
  struct Model final : Concept {
    F f;
    explicit Model(F fn) : f(std::move(fn)) {}
    double e0(const double& r) const override { return f(r); }
    Jet1 e1(const Jet1& r) const override { return f(r); }
    Jet2 e2(const Jet2& r) const override { return f(r); }
    Jet3 e3(const Jet3& r) const override { return f(r); }
  };

 public:
  RadialFn() : RadialFn(0.0) {}
  RadialFn(double c)  // NOLINT: constant profile
      : RadialFn([c](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          (void)r;
          return T(c);
        }) {}
  template <class F, class = std::enable_if_t<!std::is_arithmetic_v<std::decay_t<F>> &&
                                              !std::is_same_v<std::decay_t<F>, RadialFn>>>
  RadialFn(F f) : impl_(std::make_shared<Model<F>>(std::move(f))) {}

  template <class T>
  T operator()(const T& r) const {
    if constexpr (std::is_same_v<T, double>)
      return impl_->e0(r);
    else if constexpr (std::is_same_v<T, Jet1>)
      return impl_->e1(r);
    else if constexpr (std::is_same_v<T, Jet2>)
      return impl_->e2(r);
    else
      return impl_->e3(r);
  }

 private:
  std::shared_ptr<const Concept> impl_;
};

enum class OrbitModel { SU2, S1xS2, T3, S1xSigmaG };
enum class EndType { Compact, FiberedBoundary, FiberedCusp, Cone };

// Boundary fibration data declared with a metric.
struct EndInfo {
  int fiber_dim = 1;         // 0 for cone ends (point fiber)
  int euler = 0;             // circle-bundle Euler number over the base
  std::string base = "S2";
  double fiber_limit = 0;    // limiting fiber warping as r -> end
  double link_radius = 1.0;  // cone ends: round link S^3(radius)/quotient
};

// Invariant orbit coframe sigma_1..sigma_3 at chart coordinates starting at
// slot `off`.  SU(2) convention: d sigma_1 = -sigma_2 ^ sigma_3 (cyclic),
// normalized so the unit round S^3 carries warpings a = b = c = 1/2 (pinned
// by the scalar-curvature-6 oracle).
template <class T>
void orbit_coframe(OrbitModel m, const std::array<T, 4>& x, int off,
                   std::array<std::array<T, 3>, 3>& sig) {
  for (auto& row : sig) row = {T(0.0), T(0.0), T(0.0)};
  switch (m) {
    case OrbitModel::SU2: {
      const T& th = x[off];
      const T& ps = x[off + 2];
      sig[0][0] = cos(ps);
      sig[0][1] = sin(ps) * sin(th);
      sig[1][0] = -sin(ps);
      sig[1][1] = cos(ps) * sin(th);
      sig[2][1] = cos(th);
      sig[2][2] = T(1.0);
      break;
    }
    case OrbitModel::S1xS2: {
      // coords (tau, theta, phi); sigma_1, sigma_2 span the sphere, sigma_3
      // the circle, keeping the (base, base, fiber) frame order.
      const T& th = x[off + 1];
      sig[0][1] = T(1.0);
      sig[1][2] = sin(th);
      sig[2][0] = T(1.0);
      break;
    }
    case OrbitModel::T3: {
      sig[0][0] = T(1.0);
      sig[1][1] = T(1.0);
      sig[2][2] = T(1.0);
      break;
    }
    case OrbitModel::S1xSigmaG: {
      // coords (y1, y2, tau), hyperbolic plane chart dy/y2.
      const T& y2 = x[off + 1];
      sig[0][0] = 1.0 / y2;
      sig[1][1] = 1.0 / y2;
      sig[2][2] = T(1.0);
      break;
    }
  }
}

// Diagonal cohomogeneity-one metric
//   g = g_rr(r) dr^2 + f1(r)^2 sigma_1^2 + f2(r)^2 sigma_2^2 + f3(r)^2 sigma_3^2
// on chart (r, x1, x2, x3), optionally composed with a Definition-3.2 style
// perturbation g -> g + x * a1 acting on the tangent frame legs.
class CohomOneMetric {
 public:
  std::string name;
  OrbitModel orbit = OrbitModel::SU2;
  int quotient = 1;            // |Gamma| dividing the orbit volume
  double coord_volume = 0;     // integral of sigma_1^sigma_2^sigma_3 / |Gamma|
  double r0 = 0, r1 = 0;       // open radial domain; r1 may be +inf
  bool end_at_zero = false;    // cusp models: the end sits at r -> r0
  EndType end = EndType::Compact;
  EndInfo end_info;
  TopologicalData topo;
  bool einstein = false;
  // Orientation relative to the (radial, base, fiber) frame order; flips
  // the sign of all signature-type quantities and is recorded in reports.
  double orientation = 1.0;
  double sample_rlo = 0.1, sample_rhi = 100.0;

  RadialFn g_rr{1.0}, f1{1.0}, f2{1.0}, f3{1.0};

  bool perturbed = false;
  std::array<std::array<RadialFn, 3>, 3> pert{};  // a1 tangent block, in x

  // Coframe coefficient jets at seeded coordinates: e^a = E[a][mu] dx^mu.
  template <class T>
  void coframe_jets(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& E) const {
    const T& r = x[0];
    for (auto& row : E) row = {T(0.0), T(0.0), T(0.0), T(0.0)};
    E[0][0] = sqrt(g_rr(r));
    std::array<std::array<T, 3>, 3> sig;
    orbit_coframe<T>(orbit, x, 1, sig);
    std::array<T, 3> f = {f1(r), f2(r), f3(r)};
    std::array<std::array<T, 4>, 4> base{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) base[1 + i][1 + j] = f[i] * sig[i][j];
    if (!perturbed) {
      for (int i = 1; i < 4; ++i) E[i] = base[i];
      return;
    }
    // Perturbed coframe: Cholesky factor of I + x*a1(x) mixes the tangent
    // legs; the radial leg is untouched (a1 has no dx components).
    T xx = defining_x(r);
    std::array<std::array<T, 3>, 3> G{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        G[i][j] = xx * pert[i][j](xx);
        if (i == j) G[i][j] = G[i][j] + 1.0;
      }
    std::array<std::array<T, 3>, 3> L{};
    L[0][0] = sqrt(G[0][0]);
    L[1][0] = G[1][0] / L[0][0];
    L[1][1] = sqrt(G[1][1] - L[1][0] * L[1][0]);
    L[2][0] = G[2][0] / L[0][0];
    L[2][1] = (G[2][1] - L[2][0] * L[1][0]) / L[1][1];
    L[2][2] = sqrt(G[2][2] - L[2][0] * L[2][0] - L[2][1] * L[2][1]);
    for (int c = 0; c < 3; ++c)
      for (int mu = 0; mu < 4; ++mu) {
        T acc(0.0);
        for (int a = 0; a < 3; ++a) acc += L[a][c] * base[1 + a][mu];
        E[1 + c][mu] = acc;
      }
  }

  // Boundary defining function: x = 1/r for fibered-boundary type metrics,
  // the coordinate itself for cusp models.
  template <class T>
  T defining_x(const T& r) const {
    if (end_at_zero) return r;
    return 1.0 / r;
  }

  double hypersurface_radius(double eps) const {
    return end_at_zero ? eps : 1.0 / eps;
  }

  Coframe coframe() const;
  Coframe frozen_coframe(double R) const;

  // Interior orbit point at radius r, away from chart degeneracies.
  Point orbit_point(double r) const;
  Point orbit_point_random(double r, std::mt19937& rng) const;

  // Orbit volume at radius r, from the tangent coframe determinant (exact
  // also for perturbed metrics).
  double orbit_volume(double r) const;

  // Arclength factor of the radial coordinate: dvol = radial_weight dr ^
  // (orbit volume form).
  double radial_weight(double r) const { return std::sqrt(g_rr(r)); }

  std::vector<Point> radial_samples(int count) const;
};

// Catalog constructors.
CohomOneMetric flat_r4();
CohomOneMetric round_s4(double radius);
CohomOneMetric taub_nut(double m);
CohomOneMetric eguchi_hanson(double a);
CohomOneMetric euclidean_schwarzschild(double m);
CohomOneMetric model_fibered_boundary(int e, const std::string& base, double fiber_len);
CohomOneMetric model_fibered_cusp(int e, const std::string& base, double fiber_len);

// Symmetric two-tensor a1 on the rescaled frame, smooth in x up to x = 0,
// with vanishing radial row (Definition-3.2 class).  Entries are functions
// of the defining function x.
class PerturbationSpec {
 public:
  void set(int i, int j, RadialFn fn) {
    if (i < 0 || j < 0 || i > 3 || j > 3)
      throw std::invalid_argument("perturbation index out of range");
    entries_[i][j] = fn;
    entries_[j][i] = fn;
    present_[i][j] = present_[j][i] = true;
  }
  const RadialFn& entry(int i, int j) const { return entries_[i][j]; }
  bool has_radial_entry() const {
    for (int j = 0; j < 4; ++j)
      if (present_[0][j]) return true;
    return false;
  }

 private:
  std::array<std::array<RadialFn, 4>, 4> entries_{};
  std::array<std::array<bool, 4>, 4> present_{};
};

// g = g1 + x * a1.  Rejects perturbations with radial components or ones
// breaking positive-definiteness anywhere on the sampled domain.
CohomOneMetric perturb(const CohomOneMetric& g1, const PerturbationSpec& spec);

// A closed oriented 3-manifold with invariant coframe and constant warpings
// (round S^3/Gamma at any radius, Berger spheres); the link inputs of the
// alpha invariant and the boundary volume.
struct LinkMetric {
  std::string name;
  int quotient = 1;
  double f1 = 0.5, f2 = 0.5, f3 = 0.5;
  bool closed_oriented = true;

  double coord_volume() const { return 16.0 * M_PI * M_PI / quotient; }
  double volume() const { return coord_volume() * f1 * f2 * f3; }
  Coframe coframe() const;
  Point sample_point() const;
  Point sample_point_random(std::mt19937& rng) const;
};

LinkMetric link_round_s3(double radius, int quotient = 1);
LinkMetric link_berger(double a, double c, int quotient = 1);

}  // namespace eo

#endif  // EO_METRICS_HPP
