#ifndef EO_SCALAR_FIELD_HPP
#define EO_SCALAR_FIELD_HPP

#include <array>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "eo/jet.hpp"

namespace eo {

// A chart point; only the first `dim` slots of a field's chart are used.
using Point = std::array<double, 4>;

// A scalar coefficient function on a 3- or 4-dimensional chart, evaluable at
// jet order 0..3.  Construct from any callable that is generic over the
// scalar type (plain double or nested Jet), e.g.
//
//   ScalarField f(4, [](const auto& x) { return sin(x[0]) * x[1]; });
//
// Fields are immutable and cheap to copy (shared impl); all evaluation is
// pure, so they are safe to use from many threads.
class ScalarField {
  struct Concept {
    virtual ~Concept() = default;
    virtual double eval0(const std::array<double, 4>&) const = 0;
    virtual Jet1 eval1(const std::array<Jet1, 4>&) const = 0;
    virtual Jet2 eval2(const std::array<Jet2, 4>&) const = 0;
    virtual Jet3 eval3(const std::array<Jet3, 4>&) const = 0;
  };

  template <class F>
  struct Model final : Concept {
    F f;
    explicit Model(F fn) : f(std::move(fn)) {}
    double eval0(const std::array<double, 4>& x) const override { return f(x); }
    Jet1 eval1(const std::array<Jet1, 4>& x) const override { return f(x); }
    Jet2 eval2(const std::array<Jet2, 4>& x) const override { return f(x); }
    Jet3 eval3(const std::array<Jet3, 4>& x) const override { return f(x); }
  };

  // Partial derivative of another field: evaluates the parent one jet level
  // deeper and reads off the requested slot.  The incoming arguments are
  // always coordinate seeds, so the underlying point can be recovered
  // exactly.
  struct PartialModel final : Concept {
    std::shared_ptr<const Concept> base;
    int dir;
    int dim;
    PartialModel(std::shared_ptr<const Concept> b, int i, int n)
        : base(std::move(b)), dir(i), dim(n) {}

    template <class T>
    std::array<T, 4> reseed(const Point& p) const {
      return seed_point<T>(p, dim);
    }
    double eval0(const std::array<double, 4>& x) const override {
      return base->eval1(reseed<Jet1>(x)).d[dir];
    }
    Jet1 eval1(const std::array<Jet1, 4>& x) const override {
      Point p;
      for (int i = 0; i < 4; ++i) p[i] = scalar_value(x[i]);
      return base->eval2(reseed<Jet2>(p)).d[dir];
    }
    Jet2 eval2(const std::array<Jet2, 4>& x) const override {
      Point p;
      for (int i = 0; i < 4; ++i) p[i] = scalar_value(x[i]);
      return base->eval3(reseed<Jet3>(p)).d[dir];
    }
    Jet3 eval3(const std::array<Jet3, 4>&) const override {
      throw std::logic_error("ScalarField: jet nesting depth exceeded");
    }
  };

 public:
  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, ScalarField>>>
  ScalarField(int dim, F f)
      : dim_(dim), impl_(std::make_shared<Model<F>>(std::move(f))) {}

  static ScalarField constant(int dim, double c) {
    return ScalarField(dim, [c](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      return T(c);
    });
  }

  static ScalarField coordinate(int dim, int i) {
    return ScalarField(dim, [i](const auto& x) { return x[i]; });
  }

  int dim() const { return dim_; }

  double value(const Point& p) const {
    return impl_->eval0(seed_point<double>(p, dim_));
  }

  // Value plus exact gradient.
  Jet1 jet(const Point& p) const { return impl_->eval1(seed_point<Jet1>(p, dim_)); }

  // Value, gradient and Hessian via nested jets.
  Jet2 jet2(const Point& p) const { return impl_->eval2(seed_point<Jet2>(p, dim_)); }

  // The partial derivative as a field in its own right.
  ScalarField partial(int i) const {
    if (i < 0 || i >= dim_) throw std::invalid_argument("partial: bad direction");
    return ScalarField(FromImpl{}, dim_,
                       std::make_shared<PartialModel>(impl_, i, dim_));
  }

  // Generic evaluation on coordinate seeds, used by field composition.
  template <class T>
  T eval_on(const std::array<T, 4>& x) const {
    if constexpr (std::is_same_v<T, double>)
      return impl_->eval0(x);
    else if constexpr (std::is_same_v<T, Jet1>)
      return impl_->eval1(x);
    else if constexpr (std::is_same_v<T, Jet2>)
      return impl_->eval2(x);
    else
      return impl_->eval3(x);
  }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_dim(a, b);
    return ScalarField(a.dim_, [a, b](const auto& x) { return a.eval_on(x) + b.eval_on(x); });
  }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_dim(a, b);
    return ScalarField(a.dim_, [a, b](const auto& x) { return a.eval_on(x) - b.eval_on(x); });
  }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same_dim(a, b);
    return ScalarField(a.dim_, [a, b](const auto& x) { return a.eval_on(x) * b.eval_on(x); });
  }
  friend ScalarField operator*(double c, const ScalarField& a) {
    return ScalarField(a.dim_, [c, a](const auto& x) { return c * a.eval_on(x); });
  }
  friend ScalarField operator*(const ScalarField& a, double c) { return c * a; }
  friend ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

 private:
  struct FromImpl {};
  ScalarField(FromImpl, int dim, std::shared_ptr<const Concept> impl)
      : dim_(dim), impl_(std::move(impl)) {}

  static void require_same_dim(const ScalarField& a, const ScalarField& b) {
    if (a.dim_ != b.dim_)
      throw std::invalid_argument("ScalarField: chart dimension mismatch");
  }

  int dim_;
  std::shared_ptr<const Concept> impl_;
};

}  // namespace eo

#endif  // EO_SCALAR_FIELD_HPP
