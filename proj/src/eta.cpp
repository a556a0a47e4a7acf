#include "eo/eta.hpp"

#include <stdexcept>

namespace eo {

Rational half_adiabatic_limit_circle_over_surface(int e) {
  return Rational(e, 3) - Rational(sign_B_e(e));
}

int sign_B_e(int e, int base_dim) {
  if (base_dim != 2)
    throw std::invalid_argument("sign_B_e: only surfaces (base_dim = 2) supported");
  return e > 0 ? 1 : (e < 0 ? -1 : 0);
}

std::vector<Rational> bernoulli_numbers(int n) {
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1.
  std::vector<Rational> B(n + 1, Rational(0));
  B[0] = Rational(1);
  for (int m = 1; m <= n; ++m) {
    Rational acc(0);
    Rational binom(1);  // C(m+1, 0)
    for (int j = 0; j < m; ++j) {
      acc += binom * B[j];
      binom = binom * Rational(m + 1 - j, j + 1);
    }
    // binom now equals C(m+1, m) = m+1.
    B[m] = -acc / binom;
  }
  return B;
}

EtaSeries eta_tilde_series(int order) {
  if (order < 0 || order > 20)
    throw std::invalid_argument("eta_tilde_series: order must be in [0, 20]");
  EtaSeries s;
  s.eta_tilde.assign(order + 1, Rational(0));
  s.l_defect.assign(order + 1, Rational(0));
  auto B = bernoulli_numbers(order + 1);
  // x coth x = sum 2^{2k} B_{2k} x^{2k} / (2k)!   gives
  //   1/tanh e - 1/e   = sum_{k>=1} 2^{2k} B_{2k} / (2k)! e^{2k-1},
  //   2(1/(2 tanh(e/2)) - 1/e) = sum_{k>=1} 2 B_{2k} / (2k)! e^{2k-1}.
  for (int k = 1; 2 * k - 1 <= order; ++k) {
    Rational c = B[2 * k];
    for (int j = 1; j <= 2 * k; ++j) c = c / Rational(j);  // reduce stepwise
    Rational l = c;
    for (int j = 0; j < 2 * k; ++j) l = l * Rational(2);
    s.l_defect[2 * k - 1] = l;
    s.eta_tilde[2 * k - 1] = c * Rational(2);
  }
  return s;
}

EtaValue resolve_half_eta(const BoundaryFibration& f) {
  EtaValue v;
  if (const auto* cb = std::get_if<CircleOverSurface>(&f)) {
    v.exact = true;
    v.q = half_adiabatic_limit_circle_over_surface(cb->euler);
    v.provenance = "circle-bundle";
  } else if (const auto* ue = std::get_if<UserEta>(&f)) {
    v.exact = false;
    v.x = ue->half_a_lim_eta;
    v.provenance = "user";
  } else {
    const auto& cl = std::get<ConeLink>(f);
    v.exact = false;
    v.x = 0.5 * cl.eta;
    v.provenance = "cone-link";
  }
  return v;
}

}  // namespace eo
