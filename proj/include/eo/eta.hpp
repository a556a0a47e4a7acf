#ifndef EO_ETA_HPP
#define EO_ETA_HPP

#include <string>
#include <variant>
#include <vector>

#include "eo/rational.hpp"

namespace eo {

// Boundary fibration data feeding the eta correction of the signature index.
struct CircleOverSurface {
  int euler = 0;
  int genus = 0;  // the adiabatic limit sees only the Euler number
};
struct ConeLink {
  double eta = 0;
  double volume = 0;
  double alpha = 0;
};
struct UserEta {
  double half_a_lim_eta = 0;
};
using BoundaryFibration = std::variant<CircleOverSurface, ConeLink, UserEta>;

// Half the adiabatic limit of the signature eta invariant for a circle
// bundle of Euler number e over a surface: e/3 - sign(e), exact.
Rational half_adiabatic_limit_circle_over_surface(int e);

// Signature of the quadratic form (x, y) -> <x y e, [B]> on H^0 when the
// base is a surface; only base_dim = 2 is supported.
int sign_B_e(int e, int base_dim = 2);

// Taylor coefficients (in the curvature variable) of the eta-form
// 2 (1/(2 tanh(e/2)) - 1/e) and of the L-defect 1/tanh(e) - 1/e, exact
// rationals from Bernoulli numbers; coefficient k of e^k, k = 0..order.
struct EtaSeries {
  std::vector<Rational> eta_tilde;
  std::vector<Rational> l_defect;
};
EtaSeries eta_tilde_series(int order);

// B_0..B_n, exact.
std::vector<Rational> bernoulli_numbers(int n);

struct EtaValue {
  bool exact = false;
  Rational q;
  double x = 0;
  std::string provenance;
  double to_double() const { return exact ? q.to_double() : x; }
};

EtaValue resolve_half_eta(const BoundaryFibration& f);

}  // namespace eo

#endif  // EO_ETA_HPP
