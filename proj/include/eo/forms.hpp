#ifndef EO_FORMS_HPP
#define EO_FORMS_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eo/scalar_field.hpp"

namespace eo {

// Strictly increasing multi-indices are encoded as bitmasks over the chart
// coordinates (bit i set = dx^i present).  Sign bookkeeping reduces to
// counting crossings when two masks merge.
namespace multiindex {

inline int popcount(unsigned m) { return __builtin_popcount(m); }

// Sign of reordering dx^{m1} ^ dx^{m2} into the increasing basis element for
// m1|m2; zero if the factors overlap.
inline int merge_sign(unsigned m1, unsigned m2) {
  if (m1 & m2) return 0;
  int crossings = 0;
  for (int b = 0; b < 4; ++b)
    if (m2 & (1u << b)) crossings += popcount(m1 >> (b + 1));
  return (crossings % 2 == 0) ? 1 : -1;
}

// Sign of inserting dx^j in front of the increasing element for mask m.
inline int insert_sign(int j, unsigned m) { return merge_sign(1u << j, m); }

inline std::vector<int> indices(unsigned m) {
  std::vector<int> v;
  for (int b = 0; b < 4; ++b)
    if (m & (1u << b)) v.push_back(b);
  return v;
}

inline unsigned mask(std::initializer_list<int> idx) {
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

// All increasing multi-indices of the given length, in deterministic order.
inline std::vector<unsigned> masks_of_degree(int dim, int degree) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << dim); ++m)
    if (popcount(m) == degree) out.push_back(m);
  return out;
}

}  // namespace multiindex

// Pointwise evaluation of a form: coefficient per multi-index mask.
struct FormValue {
  int dim = 4;
  int degree = 0;
  std::array<double, 16> c{};

  double operator[](unsigned mask) const { return c[mask]; }
  double max_abs() const {
    double m = 0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }
};

// A differential form of fixed degree with ScalarField coefficients over
// strictly increasing multi-indices.  Forms of degree above the chart
// dimension are allowed but always empty (the zero form).
class DifferentialForm {
 public:
  DifferentialForm(int dim, int degree) : dim_(dim), degree_(degree) {}

  static DifferentialForm zero(int dim, int degree) {
    return DifferentialForm(dim, degree);
  }

  // dx^i as a one-form.
  static DifferentialForm dx(int dim, int i) {
    DifferentialForm f(dim, 1);
    f.set_component(1u << i, ScalarField::constant(dim, 1.0));
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero_layout() const { return comps_.empty(); }

  const std::map<unsigned, ScalarField>& components() const { return comps_; }

  void set_component(unsigned mask, ScalarField f) {
    if (multiindex::popcount(mask) != degree_)
      throw std::invalid_argument("component mask does not match form degree");
    comps_.insert_or_assign(mask, std::move(f));
  }

  void add_component(unsigned mask, const ScalarField& f) {
    auto it = comps_.find(mask);
    if (it == comps_.end())
      set_component(mask, f);
    else
      it->second = it->second + f;
  }

  FormValue evaluate(const Point& p) const {
    FormValue v;
    v.dim = dim_;
    v.degree = degree_;
    for (const auto& [m, f] : comps_) v.c[m] = f.value(p);
    return v;
  }

  friend DifferentialForm operator+(const DifferentialForm& a,
                                    const DifferentialForm& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
      throw std::invalid_argument("form addition: degree/dimension mismatch");
    DifferentialForm r = a;
    for (const auto& [m, f] : b.comps_) r.add_component(m, f);
    return r;
  }

  friend DifferentialForm operator*(double c, const DifferentialForm& a) {
    DifferentialForm r(a.dim_, a.degree_);
    for (const auto& [m, f] : a.comps_) r.set_component(m, c * f);
    return r;
  }

  friend DifferentialForm operator*(const ScalarField& s,
                                    const DifferentialForm& a) {
    DifferentialForm r(a.dim_, a.degree_);
    for (const auto& [m, f] : a.comps_) r.set_component(m, s * f);
    return r;
  }

 private:
  int dim_;
  int degree_;
  std::map<unsigned, ScalarField> comps_;
};

// Graded-anticommutative, associative wedge product.
inline DifferentialForm wedge(const DifferentialForm& a,
                              const DifferentialForm& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("wedge: chart dimension mismatch");
  DifferentialForm r(a.dim(), a.degree() + b.degree());
  if (r.degree() > a.dim()) return r;
  for (const auto& [ma, fa] : a.components())
    for (const auto& [mb, fb] : b.components()) {
      int s = multiindex::merge_sign(ma, mb);
      if (s == 0) continue;
      r.add_component(ma | mb, double(s) * (fa * fb));
    }
  return r;
}

// Exterior derivative; coefficients are AD partials of the input
// coefficients, so d can be applied twice to anything built from
// twice-differentiable fields.
inline DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm r(a.dim(), a.degree() + 1);
  if (r.degree() > a.dim()) return r;
  for (const auto& [m, f] : a.components())
    for (int j = 0; j < a.dim(); ++j) {
      if (m & (1u << j)) continue;
      int s = multiindex::insert_sign(j, m);
      r.add_component(m | (1u << j), double(s) * f.partial(j));
    }
  return r;
}

// A two-form at a point in orthonormal-frame components; pair order
// (01, 02, 03, 12, 13, 23).
struct TwoFormFrame {
  std::array<double, 6> c{};

  static constexpr std::array<std::pair<int, int>, 6> kPairs = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

  static int pair_index(int a, int b) {
    static constexpr int lut[4][4] = {{-1, 0, 1, 2},
                                      {0, -1, 3, 4},
                                      {1, 3, -1, 5},
                                      {2, 4, 5, -1}};
    return lut[a][b];
  }

  double comp(int a, int b) const {
    if (a == b) return 0.0;
    double v = c[pair_index(a, b)];
    return a < b ? v : -v;
  }

  friend TwoFormFrame operator+(const TwoFormFrame& x, const TwoFormFrame& y) {
    TwoFormFrame r;
    for (int i = 0; i < 6; ++i) r.c[i] = x.c[i] + y.c[i];
    return r;
  }
  friend TwoFormFrame operator*(double s, const TwoFormFrame& x) {
    TwoFormFrame r;
    for (int i = 0; i < 6; ++i) r.c[i] = s * x.c[i];
    return r;
  }
};

// Hodge star on frame two-forms in dimension 4.  With orientation +1 the
// volume form is e0^e1^e2^e3, and *(e0^e1) = e2^e3 etc.
inline TwoFormFrame hodge_star(const TwoFormFrame& f, double orientation) {
  TwoFormFrame r;
  r.c[0] = orientation * f.c[5];  // *(01) = 23
  r.c[1] = -orientation * f.c[4]; // *(02) = -13
  r.c[2] = orientation * f.c[3];  // *(03) = 12
  r.c[3] = orientation * f.c[2];
  r.c[4] = -orientation * f.c[1];
  r.c[5] = orientation * f.c[0];
  return r;
}

// Splits a frame two-form into its self-dual and anti-self-dual parts.
inline std::pair<TwoFormFrame, TwoFormFrame> hodge_sd_project(
    const TwoFormFrame& f, double orientation) {
  TwoFormFrame s = hodge_star(f, orientation);
  TwoFormFrame plus, minus;
  for (int i = 0; i < 6; ++i) {
    plus.c[i] = 0.5 * (f.c[i] + s.c[i]);
    minus.c[i] = 0.5 * (f.c[i] - s.c[i]);
  }
  return {plus, minus};
}

}  // namespace eo

#endif  // EO_FORMS_HPP
