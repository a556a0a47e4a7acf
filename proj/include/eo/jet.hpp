#ifndef EO_JET_HPP
#define EO_JET_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace eo {

// Forward-mode AD scalar: value plus partial derivatives with respect to up
// to four chart coordinates.  Charts in this project are 3- or 4-dimensional,
// so the gradient is a fixed array of capacity 4; unused slots stay zero.
//
// Nesting Jet<Jet<double>> gives exact second derivatives (jet-of-jets), and
// one more level gives third derivatives.  All arithmetic follows dual-number
// semantics: product and chain rule hold exactly, no truncation error beyond
// floating point.
template <class T>
struct Jet {
  T value{};
  std::array<T, 4> d{};

  Jet() = default;
  Jet(const T& v) : value(v) {}  // NOLINT: implicit lift of constants
  Jet(const T& v, const std::array<T, 4>& g) : value(v), d(g) {}
  // Lift a plain double through any nesting depth.
  template <class S, class = std::enable_if_t<std::is_arithmetic_v<S> &&
                                              !std::is_same_v<S, T>>>
  Jet(S v) : value(T(double(v))) {}  // NOLINT

  Jet& operator+=(const Jet& o) {
    value += o.value;
    for (int i = 0; i < 4; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    value -= o.value;
    for (int i = 0; i < 4; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet operator-() const {
    Jet r;
    r.value = -value;
    for (int i = 0; i < 4; ++i) r.d[i] = -d[i];
    return r;
  }
};

using Jet1 = Jet<double>;
using Jet2 = Jet<Jet1>;
using Jet3 = Jet<Jet2>;

// scalar_value<T> strips all jet layers down to the underlying double.
inline double scalar_value(double x) { return x; }
template <class T>
double scalar_value(const Jet<T>& x) {
  return scalar_value(x.value);
}

template <class T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(a);
  r += b;
  return r;
}
template <class T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(a);
  r -= b;
  return r;
}
template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r;
  r.value = a.value * b.value;
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] * b.value + a.value * b.d[i];
  return r;
}
template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r;
  r.value = a.value / b.value;
  T inv2 = b.value * b.value;
  for (int i = 0; i < 4; ++i)
    r.d[i] = (a.d[i] * b.value - a.value * b.d[i]) / inv2;
  return r;
}

// Mixed double/jet arithmetic, lifting the double to a constant jet.
template <class T>
Jet<T> operator+(double a, const Jet<T>& b) {
  return Jet<T>(T(a)) + b;
}
template <class T>
Jet<T> operator+(const Jet<T>& a, double b) {
  return a + Jet<T>(T(b));
}
template <class T>
Jet<T> operator-(double a, const Jet<T>& b) {
  return Jet<T>(T(a)) - b;
}
template <class T>
Jet<T> operator-(const Jet<T>& a, double b) {
  return a - Jet<T>(T(b));
}
template <class T>
Jet<T> operator*(double a, const Jet<T>& b) {
  Jet<T> r;
  r.value = T(a) * b.value;
  for (int i = 0; i < 4; ++i) r.d[i] = T(a) * b.d[i];
  return r;
}
template <class T>
Jet<T> operator*(const Jet<T>& a, double b) {
  return b * a;
}
template <class T>
Jet<T> operator/(double a, const Jet<T>& b) {
  return Jet<T>(T(a)) / b;
}
template <class T>
Jet<T> operator/(const Jet<T>& a, double b) {
  return a * (1.0 / b);
}

// Chain rule helper: r = f(a.value), with f'(a.value) supplied.
template <class T>
Jet<T> jet_compose(const Jet<T>& a, const T& f, const T& fprime) {
  Jet<T> r;
  r.value = f;
  for (int i = 0; i < 4; ++i) r.d[i] = fprime * a.d[i];
  return r;
}

using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <class T>
Jet<T> sin(const Jet<T>& a) {
  return jet_compose(a, sin(a.value), cos(a.value));
}
template <class T>
Jet<T> cos(const Jet<T>& a) {
  return jet_compose(a, cos(a.value), -sin(a.value));
}
template <class T>
Jet<T> exp(const Jet<T>& a) {
  T e = exp(a.value);
  return jet_compose(a, e, e);
}
template <class T>
Jet<T> log(const Jet<T>& a) {
  return jet_compose(a, log(a.value), 1.0 / a.value);
}
template <class T>
Jet<T> sqrt(const Jet<T>& a) {
  T s = sqrt(a.value);
  return jet_compose(a, s, 0.5 / s);
}
template <class T>
Jet<T> sinh(const Jet<T>& a) {
  return jet_compose(a, sinh(a.value), cosh(a.value));
}
template <class T>
Jet<T> cosh(const Jet<T>& a) {
  return jet_compose(a, cosh(a.value), sinh(a.value));
}
template <class T>
Jet<T> tanh(const Jet<T>& a) {
  T t = tanh(a.value);
  return jet_compose(a, t, 1.0 - t * t);
}

// Integer powers via repeated multiplication (exact for jets, no branch on
// the sign of the base).
template <class T>
T pow_int(const T& a, int n) {
  if (n < 0) return 1.0 / pow_int(a, -n);
  T r(1.0);
  T base = a;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}
inline double pow_int(double a, int n) { return std::pow(a, n); }

// Coordinate seeds.  seed_point<T>(p, dim) produces the jets representing the
// chart coordinate functions at p, so that evaluating an expression on them
// yields its derivatives up to the nesting depth of T.
inline void seed_coordinate(double& x, double p, int) { x = p; }
template <class T>
void seed_coordinate(Jet<T>& x, double p, int i) {
  seed_coordinate(x.value, p, i);
  x.d[i] = T(1.0);
}

template <class T>
std::array<T, 4> seed_point(const std::array<double, 4>& p, int dim) {
  std::array<T, 4> x{};
  for (int i = 0; i < dim; ++i) seed_coordinate(x[i], p[i], i);
  return x;
}

}  // namespace eo

#endif  // EO_JET_HPP
