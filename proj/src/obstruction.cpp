#include "eo/obstruction.hpp"

#include <cmath>
#include <stdexcept>

namespace eo {

namespace {

constexpr double kFloatTol = 1e-12;

Verdict from_exact(Rational lhs, Rational rhs, std::string note) {
  Verdict v;
  v.exact = true;
  v.lhs_q = lhs;
  v.rhs_q = rhs;
  v.lhs = lhs.to_double();
  v.rhs = rhs.to_double();
  v.rigidity_note = std::move(note);
  if (lhs < rhs)
    v.status = VerdictStatus::Violated;
  else if (lhs == rhs)
    v.status = VerdictStatus::EqualityRigidity;
  else
    v.status = VerdictStatus::Satisfied;
  return v;
}

Verdict from_float(double lhs, double rhs, std::string note) {
  Verdict v;
  v.exact = false;
  v.lhs = lhs;
  v.rhs = rhs;
  v.rigidity_note = std::move(note);
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  if (std::abs(lhs - rhs) <= kFloatTol * scale)
    v.status = VerdictStatus::EqualityRigidity;
  else if (lhs < rhs)
    v.status = VerdictStatus::Violated;
  else
    v.status = VerdictStatus::Satisfied;
  return v;
}

const char* kNoteClosed = "equality: flat, or the universal cover is K3";
const char* kNoteKotschick =
    "equality: flat, or the universal cover is K3 or hyperbolic";
const char* kNoteFibered = "equality: complete Calabi-Yau";
const char* kNoteCone = "equality: asymptotically conical Calabi-Yau";
const char* kNoteNakajima = "equality case not characterized here (ALE setting)";
const char* kNoteAnderson =
    "equality case not characterized here (conformally compact setting)";

}  // namespace

Verdict check(const ObstructionInput& input) {
  const auto& t = input.topo;
  const Rational chi(t.chi), tau(t.tau);
  const Rational three_half(3, 2);

  if (std::holds_alternative<ClosedHT>(input.mode)) {
    return from_exact(chi, three_half * tau.abs(), kNoteClosed);
  }
  if (const auto* k = std::get_if<Kotschick>(&input.mode)) {
    double rhs = 1.5 * std::abs(double(t.tau)) +
                 std::pow(k->lambda, 4) / (108.0 * M_PI * M_PI);
    return from_float(double(t.chi), rhs, kNoteKotschick);
  }
  if (const auto* fe = std::get_if<FiberedEnd>(&input.mode)) {
    if (const auto* cb = std::get_if<CircleOverSurface>(&fe->fibration)) {
      Rational h = half_adiabatic_limit_circle_over_surface(cb->euler);
      Rational corrected =
          fe->convention == EtaSignConvention::Corollary ? tau - h : tau + h;
      return from_exact(chi, three_half * corrected.abs(), kNoteFibered);
    }
    if (const auto* ue = std::get_if<UserEta>(&fe->fibration)) {
      double corrected = double(t.tau) + ue->half_a_lim_eta;
      return from_float(double(t.chi), 1.5 * std::abs(corrected), kNoteFibered);
    }
    const auto& cl = std::get<ConeLink>(fe->fibration);
    ConeEnd cone{cl.volume, cl.eta, cl.alpha};
    return check({t, cone});
  }
  if (const auto* c = std::get_if<ConeEnd>(&input.mode)) {
    double rhs = c->volume / (2.0 * M_PI * M_PI) +
                 1.5 * std::abs(double(t.tau) + 0.5 * c->eta) + c->alpha;
    return from_float(double(t.chi), rhs, kNoteCone);
  }
  if (const auto* n = std::get_if<NakajimaALE>(&input.mode)) {
    if (n->gamma_order < 1)
      throw std::invalid_argument("Nakajima mode: |Gamma| must be positive");
    double rhs = 1.0 / n->gamma_order +
                 1.5 * std::abs(double(t.tau) + n->eta_s);
    return from_float(double(t.chi), rhs, kNoteNakajima);
  }
  const auto& a = std::get<AndersonCC>(input.mode);
  double lhs = double(t.chi) -
               3.0 * a.renormalized_volume / (4.0 * M_PI * M_PI);
  double rhs = 1.5 * std::abs(double(t.tau) - a.eta);
  return from_float(lhs, rhs, kNoteAnderson);
}

int min_obstructed_blowups(TopologicalData base, const FiberedEnd& mode,
                           int k_max) {
  for (int k = 1; k <= k_max; ++k) {
    TopologicalData t = blow_up(base, k);
    Verdict v = check({t, mode});
    if (v.status == VerdictStatus::Violated) return k;
  }
  throw std::runtime_error("min_obstructed_blowups: no violation up to k_max");
}

}  // namespace eo
