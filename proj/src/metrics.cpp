#include "eo/metrics.hpp"

#include <cmath>
#include <limits>

namespace eo {

namespace {

constexpr double kPi = M_PI;

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Coframe make_coframe(const CohomOneMetric& m, bool frozen, double R) {
  Coframe cf;
  cf.n = 4;
  cf.orientation = m.orientation;
  auto fix = [frozen, R](auto x) {
    using T = std::decay_t<decltype(x[0])>;
    if (frozen) x[0] = T(R);
    return x;
  };
  cf.fused2 = [m, fix](const std::array<Jet2, 4>& x,
                       std::array<std::array<Jet2, 4>, 4>& E) {
    m.coframe_jets(fix(x), E);
  };
  for (int a = 0; a < 4; ++a) {
    DifferentialForm form(4, 1);
    for (int mu = 0; mu < 4; ++mu) {
      // The radial leg lives on dr alone; tangent legs carry no dr component.
      if ((a == 0) != (mu == 0)) continue;
      form.set_component(1u << mu, ScalarField(4, [m, fix, a, mu](const auto& x) {
                           using T = std::decay_t<decltype(x[0])>;
                           std::array<std::array<T, 4>, 4> E;
                           m.coframe_jets(fix(x), E);
                           return E[a][mu];
                         }));
    }
    cf.e.push_back(form);
  }
  return cf;
}

}  // namespace

Coframe CohomOneMetric::coframe() const { return make_coframe(*this, false, 0.0); }

Coframe CohomOneMetric::frozen_coframe(double R) const {
  return make_coframe(*this, true, R);
}

Point CohomOneMetric::orbit_point(double r) const {
  switch (orbit) {
    case OrbitModel::SU2:
      return {r, 1.0, 0.8, 1.3};
    case OrbitModel::S1xS2:
      return {r, 0.4, 1.0, 0.8};
    case OrbitModel::T3:
      return {r, 0.4, 0.8, 1.3};
    case OrbitModel::S1xSigmaG:
      return {r, 0.2, 1.0, 0.4};
  }
  return {r, 0, 0, 0};
}

Point CohomOneMetric::orbit_point_random(double r, std::mt19937& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (orbit) {
    case OrbitModel::SU2:
      return {r, 0.25 + u(rng) * (kPi - 0.5), u(rng) * 2 * kPi, u(rng) * 4 * kPi};
    case OrbitModel::S1xS2:
      return {r, u(rng), 0.25 + u(rng) * (kPi - 0.5), u(rng) * 2 * kPi};
    case OrbitModel::T3:
      return {r, u(rng) * 2 * kPi, u(rng) * 2 * kPi, u(rng) * 2 * kPi};
    case OrbitModel::S1xSigmaG:
      return {r, -0.3 + 0.6 * u(rng), 0.7 + 0.7 * u(rng), u(rng)};
  }
  return {r, 0, 0, 0};
}

double CohomOneMetric::orbit_volume(double r) const {
  Point p = orbit_point(r);
  auto x = seed_point<double>(p, 4);
  std::array<std::array<double, 4>, 4> E;
  coframe_jets<double>(x, E);
  std::array<std::array<double, 3>, 3> tangent{}, sig{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tangent[i][j] = E[1 + i][1 + j];
  orbit_coframe<double>(orbit, x, 1, sig);
  return coord_volume * std::abs(det3(tangent) / det3(sig));
}

std::vector<Point> CohomOneMetric::radial_samples(int count) const {
  std::vector<Point> out;
  out.reserve(count);
  double lo = sample_rlo, hi = sample_rhi;
  for (int i = 0; i < count; ++i) {
    double t = count == 1 ? 0.5 : double(i) / (count - 1);
    double r = lo * std::pow(hi / lo, t);
    out.push_back(orbit_point(r));
  }
  return out;
}

CohomOneMetric flat_r4() {
  CohomOneMetric m;
  m.name = "flat-r4";
  m.orbit = OrbitModel::SU2;
  m.coord_volume = 16 * kPi * kPi;
  m.r0 = 0;
  m.r1 = std::numeric_limits<double>::infinity();
  m.end = EndType::Cone;
  m.end_info = {0, 0, "S3", 0.0, 1.0};
  m.topo = {1, 0};
  m.einstein = true;
  m.g_rr = 1.0;
  m.f1 = m.f2 = m.f3 = [](const auto& r) { return 0.5 * r; };
  m.sample_rlo = 0.1;
  m.sample_rhi = 100.0;
  return m;
}

CohomOneMetric round_s4(double radius) {
  if (radius <= 0) throw std::invalid_argument("round_s4: radius must be positive");
  CohomOneMetric m;
  m.name = "round-s4";
  m.orbit = OrbitModel::SU2;
  m.coord_volume = 16 * kPi * kPi;
  m.r0 = 0;
  m.r1 = kPi * radius;
  m.end = EndType::Compact;
  m.topo = {2, 0};
  m.einstein = true;
  m.g_rr = 1.0;
  auto f = [radius](const auto& r) { return 0.5 * radius * sin(r / radius); };
  m.f1 = m.f2 = m.f3 = f;
  m.sample_rlo = 0.05 * radius;
  m.sample_rhi = (kPi - 0.05) * radius;
  return m;
}

CohomOneMetric taub_nut(double mass) {
  if (mass <= 0) throw std::invalid_argument("taub_nut: m must be positive");
  CohomOneMetric m;
  m.name = "taub-nut";
  m.orbit = OrbitModel::SU2;
  m.coord_volume = 16 * kPi * kPi;
  m.r0 = 0;
  m.r1 = std::numeric_limits<double>::infinity();
  m.end = EndType::FiberedBoundary;
  m.end_info = {1, +1, "S2", 2 * mass, 1.0};
  m.topo = {1, 0};
  m.einstein = true;
  // Gibbons-Hawking form, V = 1 + 2m/r.
  m.g_rr = [mass](const auto& r) { return 1.0 + 2.0 * mass / r; };
  auto ab = [mass](const auto& r) { return r * sqrt(1.0 + 2.0 * mass / r); };
  m.f1 = m.f2 = ab;
  m.f3 = [mass](const auto& r) { return 2.0 * mass / sqrt(1.0 + 2.0 * mass / r); };
  m.sample_rlo = 0.15 * mass;
  m.sample_rhi = 150.0 * mass;
  return m;
}

CohomOneMetric eguchi_hanson(double a) {
  if (a <= 0) throw std::invalid_argument("eguchi_hanson: a must be positive");
  CohomOneMetric m;
  m.name = "eguchi-hanson";
  m.orbit = OrbitModel::SU2;
  m.quotient = 2;  // orbits are S^3/Z_2
  m.coord_volume = 8 * kPi * kPi;
  m.r0 = a;
  m.r1 = std::numeric_limits<double>::infinity();
  // ALE: all warpings grow like r/2, so the end is a cone over the unit
  // round S^3/Z_2 (the fiber circle does not stabilize).
  m.end = EndType::Cone;
  m.end_info = {0, +2, "S2", 0.0, 1.0};
  m.topo = {2, -1};
  // Oriented so the bolt has self-intersection -2, matching tau = -1.
  m.orientation = -1.0;
  m.einstein = true;
  auto q = [a](const auto& r) {
    auto t = (a / r) * (a / r);
    return 1.0 - t * t;
  };
  m.g_rr = [q](const auto& r) { return 1.0 / q(r); };
  m.f1 = m.f2 = [](const auto& r) { return 0.5 * r; };
  m.f3 = [q](const auto& r) { return 0.5 * r * sqrt(q(r)); };
  m.sample_rlo = 1.05 * a;
  m.sample_rhi = 120.0 * a;
  return m;
}

CohomOneMetric euclidean_schwarzschild(double mass) {
  if (mass <= 0)
    throw std::invalid_argument("euclidean_schwarzschild: m must be positive");
  CohomOneMetric m;
  m.name = "euclidean-schwarzschild";
  m.orbit = OrbitModel::S1xS2;
  // tau circle period 8 pi m (smooth bolt), sphere area 4 pi.
  m.coord_volume = 8 * kPi * mass * 4 * kPi;
  m.r0 = 2 * mass;
  m.r1 = std::numeric_limits<double>::infinity();
  m.end = EndType::FiberedBoundary;
  m.end_info = {1, 0, "S2", 1.0, 1.0};
  m.topo = {2, 0};
  m.einstein = true;
  auto h = [mass](const auto& r) { return 1.0 - 2.0 * mass / r; };
  m.g_rr = [h](const auto& r) { return 1.0 / h(r); };
  m.f1 = m.f2 = [](const auto& r) { return r; };
  m.f3 = [h](const auto& r) { return sqrt(h(r)); };
  m.sample_rlo = 2.04 * mass;
  m.sample_rhi = 150.0 * mass;
  return m;
}

namespace {

// Shared layout of the model ends; the boundary variant carries the radial
// growth on the base legs, the cusp variant shrinks the fiber.
CohomOneMetric model_common(int e, const std::string& base, double fiber_len,
                            bool cusp) {
  CohomOneMetric m;
  double c = 1.0;
  if (base == "S2") {
    if (e != 0) {
      m.orbit = OrbitModel::SU2;
      m.quotient = std::abs(e);
      m.coord_volume = 16 * kPi * kPi / m.quotient;
      c = fiber_len * std::abs(e) / (4 * kPi);
    } else {
      m.orbit = OrbitModel::S1xS2;
      m.coord_volume = fiber_len * 4 * kPi;
    }
  } else if (base == "T2") {
    m.orbit = OrbitModel::T3;
    m.coord_volume = 4 * kPi * kPi * fiber_len;
    if (e != 0)
      throw std::invalid_argument("model metrics: nonzero twist over T2 not supported");
  } else if (base.rfind("Sigma", 0) == 0) {
    int genus = std::stoi(base.substr(5));
    if (genus < 2) throw std::invalid_argument("model metrics: Sigma_g needs genus >= 2");
    m.orbit = OrbitModel::S1xSigmaG;
    m.coord_volume = 4 * kPi * (genus - 1) * fiber_len;
    if (e != 0)
      throw std::invalid_argument("model metrics: nonzero twist over Sigma_g not supported");
  } else {
    throw std::invalid_argument("model metrics: unsupported base " + base);
  }
  m.end_info = {1, e, base, c, 1.0};
  m.einstein = false;
  m.topo = {0, 0};
  if (!cusp) {
    m.g_rr = 1.0;
    m.f1 = m.f2 = [](const auto& r) { return r; };
    m.f3 = c;
    m.r0 = 0.25;
    m.r1 = std::numeric_limits<double>::infinity();
    m.end = EndType::FiberedBoundary;
    m.sample_rlo = 1.0;
    m.sample_rhi = 100.0;
  } else {
    m.g_rr = [](const auto& x) { return 1.0 / (x * x); };
    m.f1 = m.f2 = 1.0;
    m.f3 = [c](const auto& x) { return c * x; };
    m.r0 = 0;
    m.r1 = 1.0;
    m.end = EndType::FiberedCusp;
    m.end_at_zero = true;
    m.sample_rlo = 1e-3;
    m.sample_rhi = 0.9;
  }
  return m;
}

}  // namespace

CohomOneMetric model_fibered_boundary(int e, const std::string& base, double fiber_len) {
  CohomOneMetric m = model_common(e, base, fiber_len, false);
  m.name = "fb-model-" + base + "-e" + std::to_string(e);
  if (base == "S2") m.topo = {2, (e > 0) - (e < 0)};
  return m;
}

CohomOneMetric model_fibered_cusp(int e, const std::string& base, double fiber_len) {
  CohomOneMetric m = model_common(e, base, fiber_len, true);
  m.name = "cusp-model-" + base + "-e" + std::to_string(e);
  return m;
}

CohomOneMetric perturb(const CohomOneMetric& g1, const PerturbationSpec& spec) {
  if (g1.end != EndType::FiberedBoundary)
    throw PerturbationError("perturb: metric must have a fibered boundary end");
  if (spec.has_radial_entry())
    throw PerturbationError(
        "perturb: a1 has radial components (violates the no-dx condition)");
  CohomOneMetric m = g1;
  m.perturbed = true;
  m.einstein = false;
  m.name = g1.name + "+perturbation";
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.pert[i][j] = spec.entry(1 + i, 1 + j);

  // Positive definiteness of I + x a1(x) over the sampled domain.
  for (int k = 0; k <= 60; ++k) {
    double r = m.sample_rlo * std::pow(1e4 / m.sample_rlo, k / 60.0);
    double x = m.defining_x(r);
    std::array<std::array<double, 3>, 3> G{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        G[i][j] = (i == j ? 1.0 : 0.0) + x * m.pert[i][j](x);
    // Cholesky pivots.
    double l00 = G[0][0];
    if (l00 <= 1e-12)
      throw PerturbationError("perturb: not positive definite at r = " + std::to_string(r));
    double l11 = G[1][1] - G[1][0] * G[1][0] / l00;
    if (l11 <= 1e-12)
      throw PerturbationError("perturb: not positive definite at r = " + std::to_string(r));
    double l20 = G[2][0], l21 = (G[2][1] - l20 * G[1][0] / l00);
    double l22 = G[2][2] - l20 * l20 / l00 - l21 * l21 / l11;
    if (l22 <= 1e-12)
      throw PerturbationError("perturb: not positive definite at r = " + std::to_string(r));
  }
  return m;
}

Coframe LinkMetric::coframe() const {
  Coframe cf;
  cf.n = 3;
  cf.orientation = 1.0;
  std::array<double, 3> f = {f1, f2, f3};
  cf.fused2 = [f](const std::array<Jet2, 4>& x,
                  std::array<std::array<Jet2, 4>, 4>& E) {
    std::array<std::array<Jet2, 3>, 3> sig;
    orbit_coframe<Jet2>(OrbitModel::SU2, x, 0, sig);
    for (auto& row : E) row = {Jet2(Jet1(0.0)), Jet2(Jet1(0.0)), Jet2(Jet1(0.0)), Jet2(Jet1(0.0))};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) E[i][j] = f[i] * sig[i][j];
  };
  for (int i = 0; i < 3; ++i) {
    DifferentialForm form(3, 1);
    double fi = f[i];
    for (int j = 0; j < 3; ++j)
      form.set_component(1u << j, ScalarField(3, [fi, i, j](const auto& x) {
                           using T = std::decay_t<decltype(x[0])>;
                           std::array<std::array<T, 3>, 3> sig;
                           orbit_coframe<T>(OrbitModel::SU2, x, 0, sig);
                           return fi * sig[i][j];
                         }));
    cf.e.push_back(form);
  }
  cf.e.push_back(DifferentialForm(3, 1));  // unused fourth slot
  return cf;
}

Point LinkMetric::sample_point() const { return {1.0, 0.8, 1.3, 0.0}; }

Point LinkMetric::sample_point_random(std::mt19937& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {0.25 + u(rng) * (kPi - 0.5), u(rng) * 2 * kPi, u(rng) * 4 * kPi, 0.0};
}

LinkMetric link_round_s3(double radius, int quotient) {
  if (radius <= 0) throw std::invalid_argument("link_round_s3: radius must be positive");
  LinkMetric l;
  l.name = "s3-r" + std::to_string(radius) +
           (quotient > 1 ? "-z" + std::to_string(quotient) : "");
  l.quotient = quotient;
  l.f1 = l.f2 = l.f3 = 0.5 * radius;
  return l;
}

LinkMetric link_berger(double a, double c, int quotient) {
  LinkMetric l;
  l.name = "berger";
  l.quotient = quotient;
  l.f1 = l.f2 = a;
  l.f3 = c;
  return l;
}

}  // namespace eo
