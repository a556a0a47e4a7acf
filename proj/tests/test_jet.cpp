#include <cmath>
#include <random>

#include "doctest.h"
#include "eo/jet.hpp"
#include "eo/scalar_field.hpp"

using namespace eo;

namespace {

// Central finite differences, the independent oracle for every AD check.
double fd_partial(const ScalarField& f, Point p, int i, double h = 1e-5) {
  Point hi = p, lo = p;
  hi[i] += h;
  lo[i] -= h;
  return (f.value(hi) - f.value(lo)) / (2 * h);
}

}  // namespace

TEST_CASE("dual-number product and chain rule are exact") {
  Point p = {0.7, 1.3, 0.4, 2.1};
  ScalarField f(4, [](const auto& x) {
    return sin(x[0]) * x[1] + sqrt(x[3]) * cos(x[2] * x[0]);
  });
  Jet1 j = f.jet(p);
  CHECK(j.value == doctest::Approx(f.value(p)).epsilon(1e-15));
  // Hand derivatives.
  double d0 = std::cos(p[0]) * p[1] - std::sqrt(p[3]) * std::sin(p[2] * p[0]) * p[2];
  double d1 = std::sin(p[0]);
  double d2 = -std::sqrt(p[3]) * std::sin(p[2] * p[0]) * p[0];
  double d3 = 0.5 / std::sqrt(p[3]) * std::cos(p[2] * p[0]);
  CHECK(j.d[0] == doctest::Approx(d0).epsilon(1e-14));
  CHECK(j.d[1] == doctest::Approx(d1).epsilon(1e-14));
  CHECK(j.d[2] == doctest::Approx(d2).epsilon(1e-14));
  CHECK(j.d[3] == doctest::Approx(d3).epsilon(1e-14));
}

TEST_CASE("AD gradient matches central finite differences at random points") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  ScalarField f(4, [](const auto& x) {
    return exp(-x[0]) * sin(x[1]) + x[2] * x[2] / (1.0 + x[3]);
  });
  for (int k = 0; k < 100; ++k) {
    Point p = {u(rng), u(rng), u(rng), u(rng)};
    Jet1 j = f.jet(p);
    for (int i = 0; i < 4; ++i) {
      double fd = fd_partial(f, p, i);
      double scale = std::max({1.0, std::abs(j.d[i]), std::abs(fd)});
      CHECK(std::abs(j.d[i] - fd) / scale < 1e-6);
    }
  }
}

TEST_CASE("nested jets produce a symmetric Hessian") {
  ScalarField f(4, [](const auto& x) { return sin(x[0] * x[1]) * exp(x[2]); });
  Point p = {0.6, 1.1, 0.3, 0.0};
  Jet2 j = f.jet2(p);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      CHECK(j.d[i].d[k] == doctest::Approx(j.d[k].d[i]).epsilon(1e-13));
  // d^2/dx0 dx1 of sin(x0 x1) e^{x2} = (cos - x0 x1 sin) e^{x2}.
  double expect = (std::cos(p[0] * p[1]) - p[0] * p[1] * std::sin(p[0] * p[1])) * std::exp(p[2]);
  CHECK(j.d[0].d[1] == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("partial fields chain twice") {
  ScalarField f(4, [](const auto& x) { return x[0] * x[0] * x[1]; });
  ScalarField fx = f.partial(0);
  ScalarField fxy = fx.partial(1);
  Point p = {1.5, 2.0, 0, 0};
  CHECK(fx.value(p) == doctest::Approx(2 * p[0] * p[1]).epsilon(1e-14));
  CHECK(fxy.value(p) == doctest::Approx(2 * p[0]).epsilon(1e-14));
  Jet1 g = fx.jet(p);
  CHECK(g.d[0] == doctest::Approx(2 * p[1]).epsilon(1e-14));
  CHECK(g.d[1] == doctest::Approx(2 * p[0]).epsilon(1e-14));
}

TEST_CASE("pow_int handles negative exponents on jets") {
  Jet1 r;
  seed_coordinate(r, 2.0, 0);
  Jet1 v = pow_int(r, -3);
  CHECK(v.value == doctest::Approx(1.0 / 8.0));
  CHECK(v.d[0] == doctest::Approx(-3.0 / 16.0));
}
