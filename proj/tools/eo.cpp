// eo: verification and obstruction workbench for Einstein 4-manifold index
// identities on the built-in metric catalog.
//
// Exit codes: 0 = satisfied/verified, 2 = violated or residual failure,
// 1 = usage error.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "eo/manifest.hpp"
#include "eo/obstruction.hpp"
#include "eo/verify.hpp"

namespace {

using namespace eo;

Manifest load_manifest(const std::string& path) {
  if (path.empty()) return Manifest::parse_string(default_manifest_text());
  return Manifest::parse_file(path);
}

CohomOneMetric find_metric(const Manifest& man, const std::string& name) {
  for (const auto& e : man.metrics)
    if (e.name == name) return build_metric(e);
  throw ManifestError("unknown metric '" + name + "' (see `eo catalog`)");
}

int cmd_catalog(const std::string& manifest_path) {
  Manifest man = load_manifest(manifest_path);
  for (const auto& e : man.metrics) {
    CohomOneMetric m = build_metric(e);
    const char* end = "compact";
    switch (m.end) {
      case EndType::FiberedBoundary: end = "fibered boundary"; break;
      case EndType::FiberedCusp: end = "fibered cusp"; break;
      case EndType::Cone: end = "cone"; break;
      default: break;
    }
    std::printf("%-24s kind=%-24s chi=%2d tau=%2d end=%-17s einstein=%s\n",
                m.name.c_str(), e.kind.c_str(), m.topo.chi, m.topo.tau, end,
                m.einstein ? "yes" : "no");
  }
  return 0;
}

int cmd_verify(const std::string& manifest_path, const std::string& name,
               double rmax, double tol, const std::string& format,
               const std::string& orientation) {
  Manifest man = load_manifest(manifest_path);
  CohomOneMetric m = find_metric(man, name);
  if (m.end == EndType::FiberedBoundary && !m.einstein && !m.perturbed) {
    std::fprintf(stderr,
                 "note: %s is a model end, not Einstein; index residuals are "
                 "not expected to vanish\n",
                 m.name.c_str());
  }
  if (orientation == "flipped") m.orientation = -m.orientation;
  QuadratureSpec spec;
  if (rmax > 0) {
    spec.rmax_schedule.clear();
    for (double f : {1e-2, 1e-1, 1.0}) spec.rmax_schedule.push_back(rmax * f);
  }
  IndexReport rep = verify_metric(m, spec, tol);
  if (format == "json") {
    std::cout << report_json(rep).dump(2) << "\n";
  } else {
    std::printf("metric               %s\n", rep.metric.c_str());
    std::printf("euler:   integral=%.10g cs=%.10g chi=%d residual=%.3g\n",
                rep.euler.table.extrapolated, rep.euler.cs_limit,
                rep.euler.chi_declared, rep.euler.residual);
    std::printf("sig:     integral=%.10g half_eta=%s tau=%d residual=%.3g (%s)\n",
                rep.signature.table.extrapolated,
                rep.signature.half_eta.exact ? rep.signature.half_eta.q.str().c_str()
                                             : format_decimal(rep.signature.half_eta.x).c_str(),
                rep.signature.tau_declared, rep.signature.residual,
                rep.signature.convention.c_str());
    std::printf("weyl:    %s, einstein residual %.3g\n",
                rep.curvature.weyl_chirality.c_str(),
                rep.curvature.einstein_residual_max);
    std::printf("pass:    %s\n", rep.pass ? "yes" : "no");
  }
  if (rep.eta_sign_ambiguous) {
    std::fprintf(stderr,
                 "error: neither eta-sign convention reconciles the signature "
                 "(residuals %.3g / %.3g)\n",
                 rep.signature.residual, rep.signature.residual_other);
    return 2;
  }
  return rep.pass ? 0 : 2;
}

int cmd_sweep(const std::string& manifest_path, const std::string& name,
              std::vector<double> eps) {
  Manifest man = load_manifest(manifest_path);
  CohomOneMetric m = find_metric(man, name);
  if (eps.empty()) {
    if (m.end_at_zero)
      eps = {1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3};
    else
      eps = {1.0 / 50, 1.0 / 100, 1.0 / 200, 1.0 / 400};
  }
  SweepResult s = cs_sweep(m, eps);
  std::cout << sweep_csv(s);
  std::fprintf(stderr, "# euler fit: slope=%.4f r2=%.6f (%d pts)%s\n",
               s.euler_fit.slope, s.euler_fit.r_squared, s.euler_fit.points_used,
               s.euler_fit.valid ? "" : " [below noise floor or unused]");
  std::fprintf(stderr, "# signature fit: slope=%.4f r2=%.6f (%d pts)%s\n",
               s.signature_fit.slope, s.signature_fit.r_squared,
               s.signature_fit.points_used,
               s.signature_fit.valid ? "" : " [below noise floor or unused]");
  return 0;
}

int cmd_alpha(const std::string& link, double radius, int quotient, double a,
              double c, const std::string& format) {
  LinkMetric lm = link == "berger" ? link_berger(a, c, quotient)
                                   : link_round_s3(radius, quotient);
  AlphaResult res = alpha_invariant(lm);
  if (format == "json") {
    nlohmann::ordered_json j = {
        {"link", lm.name},
        {"alpha", format_decimal(res.alpha)},
        {"boundary_volume", format_decimal(res.boundary_volume)},
        {"form_bracket", format_decimal(res.form_bracket)},
        {"form_subtracted", format_decimal(res.form_subtracted)},
        {"vol_over_2pi2", format_decimal(res.boundary_volume / (2 * M_PI * M_PI))},
    };
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("link              %s\n", lm.name.c_str());
    std::printf("alpha             %.12g\n", res.alpha);
    std::printf("boundary volume   %.12g\n", res.boundary_volume);
    std::printf("vol/(2 pi^2)      %.12g\n", res.boundary_volume / (2 * M_PI * M_PI));
    std::printf("form agreement    %.3g\n",
                std::abs(res.form_bracket - res.form_subtracted));
  }
  return 0;
}

int print_verdict(const Verdict& v, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j = {
        {"status", v.status_str()},
        {"exact", v.exact},
        {"lhs", v.exact ? v.lhs_q.str() : format_decimal(v.lhs)},
        {"rhs", v.exact ? v.rhs_q.str() : format_decimal(v.rhs)},
        {"rigidity_note", v.rigidity_note},
    };
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%s  (lhs %s, rhs %s)%s\n", v.status_str().c_str(),
                v.exact ? v.lhs_q.str().c_str() : format_decimal(v.lhs).c_str(),
                v.exact ? v.rhs_q.str().c_str() : format_decimal(v.rhs).c_str(),
                v.status == VerdictStatus::EqualityRigidity
                    ? ("  [" + v.rigidity_note + "]").c_str()
                    : "");
  }
  return v.status == VerdictStatus::Violated ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eo: curvature integrals, boundary invariants and "
               "Hitchin-Thorpe-type obstructions for Einstein 4-manifolds"};
  app.require_subcommand(1);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path, "metric manifest file (key = value sections)");

  auto* cat = app.add_subcommand("catalog", "list the metric catalog");

  auto* ver = app.add_subcommand("verify", "verify index identities for a metric");
  std::string ver_name, ver_format = "json", ver_orient = "default";
  double ver_rmax = 0, ver_tol = 1e-4;
  ver->add_option("name", ver_name, "metric name")->required();
  ver->add_option("--rmax", ver_rmax, "largest truncation radius (schedule = rmax/100, rmax/10, rmax)");
  ver->add_option("--tol", ver_tol, "residual tolerance (default 1e-4)");
  ver->add_option("--format", ver_format, "json|text")->check(CLI::IsMember({"json", "text"}));
  ver->add_option("--orientation", ver_orient,
                  "default|flipped (flips all signature-type quantities)")
      ->check(CLI::IsMember({"default", "flipped"}));

  auto* sw = app.add_subcommand("sweep", "Chern-Simons epsilon sweep, CSV output");
  std::string sw_name;
  std::vector<double> sw_eps;
  sw->add_option("name", sw_name, "metric name")->required();
  sw->add_option("--eps", sw_eps, "epsilon schedule (defining-function values)");

  auto* al = app.add_subcommand("alpha", "alpha invariant and volume of a link");
  std::string al_link = "s3", al_format = "text";
  double al_radius = 1.0, al_a = 0.5, al_c = 0.5;
  int al_quotient = 1;
  al->add_option("--link", al_link, "s3|berger")->check(CLI::IsMember({"s3", "berger"}));
  al->add_option("--radius", al_radius, "round link radius");
  al->add_option("--quotient", al_quotient, "cyclic quotient order");
  al->add_option("--a", al_a, "berger: base warping");
  al->add_option("--c", al_c, "berger: fiber warping");
  al->add_option("--format", al_format, "json|text")->check(CLI::IsMember({"json", "text"}));

  auto* ob = app.add_subcommand("obstruct", "evaluate a Hitchin-Thorpe-type inequality");
  std::string ob_mode, ob_eta_sign = "corollary", ob_format = "text";
  int ob_chi = 0, ob_tau = 0, ob_euler = 0, ob_gamma = 1;
  double ob_lambda = 0, ob_vol = 0, ob_eta = 0, ob_alpha = 0, ob_eta_s = 0,
         ob_renorm_vol = 0, ob_half_eta = 0;
  bool ob_has_half_eta = false;
  ob->add_option("--mode", ob_mode, "closed|kotschick|fibered|cone|nakajima|anderson")
      ->required()
      ->check(CLI::IsMember({"closed", "kotschick", "fibered", "cone", "nakajima", "anderson"}));
  ob->add_option("--chi", ob_chi, "Euler number")->required();
  ob->add_option("--tau", ob_tau, "signature")->required();
  ob->add_option("--euler", ob_euler, "circle-bundle Euler number (fibered mode)");
  ob->add_option("--half-eta", ob_half_eta, "user-supplied 1/2 a-lim eta (fibered mode)")
      ->each([&](const std::string&) { ob_has_half_eta = true; });
  ob->add_option("--eta-sign", ob_eta_sign, "corollary|theorem")
      ->check(CLI::IsMember({"corollary", "theorem"}));
  ob->add_option("--lambda", ob_lambda, "volume entropy (kotschick mode)");
  ob->add_option("--vol", ob_vol, "link volume (cone mode)");
  ob->add_option("--eta", ob_eta, "link eta invariant (cone/anderson modes)");
  ob->add_option("--alpha", ob_alpha, "alpha invariant (cone mode)");
  ob->add_option("--gamma-order", ob_gamma, "|Gamma| (nakajima mode)");
  ob->add_option("--eta-s", ob_eta_s, "eta of S^3/Gamma (nakajima mode)");
  ob->add_option("--renorm-vol", ob_renorm_vol, "renormalized volume (anderson mode)");
  ob->add_option("--format", ob_format, "json|text")->check(CLI::IsMember({"json", "text"}));

  auto* bs = app.add_subcommand("blowup-scan", "first k with M # k CP2bar violated");
  std::string bs_name;
  int bs_chi = 0, bs_tau = 0, bs_euler = 0;
  bool bs_explicit = false;
  std::string bs_eta_sign = "corollary";
  bs->add_option("name", bs_name, "metric name (uses its declared end data)");
  bs->add_option("--chi", bs_chi)->each([&](const std::string&) { bs_explicit = true; });
  bs->add_option("--tau", bs_tau);
  bs->add_option("--euler", bs_euler);
  bs->add_option("--eta-sign", bs_eta_sign, "corollary|theorem")
      ->check(CLI::IsMember({"corollary", "theorem"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cat->parsed()) return cmd_catalog(manifest_path);
    if (ver->parsed())
      return cmd_verify(manifest_path, ver_name, ver_rmax, ver_tol, ver_format,
                        ver_orient);
    if (sw->parsed()) return cmd_sweep(manifest_path, sw_name, sw_eps);
    if (al->parsed())
      return cmd_alpha(al_link, al_radius, al_quotient, al_a, al_c, al_format);
    if (ob->parsed()) {
      ObstructionInput input;
      input.topo = {ob_chi, ob_tau};
      EtaSignConvention conv = ob_eta_sign == "theorem" ? EtaSignConvention::Theorem
                                                        : EtaSignConvention::Corollary;
      if (ob_mode == "closed") {
        input.mode = ClosedHT{};
      } else if (ob_mode == "kotschick") {
        input.mode = Kotschick{ob_lambda};
      } else if (ob_mode == "fibered") {
        FiberedEnd fe;
        fe.convention = conv;
        if (ob_has_half_eta)
          fe.fibration = UserEta{ob_half_eta};
        else
          fe.fibration = CircleOverSurface{ob_euler, 0};
        input.mode = fe;
      } else if (ob_mode == "cone") {
        input.mode = ConeEnd{ob_vol, ob_eta, ob_alpha};
      } else if (ob_mode == "nakajima") {
        input.mode = NakajimaALE{ob_gamma, ob_eta_s};
      } else {
        input.mode = AndersonCC{ob_renorm_vol, ob_eta};
      }
      return print_verdict(check(input), ob_format);
    }
    if (bs->parsed()) {
      FiberedEnd fe;
      fe.convention = bs_eta_sign == "theorem" ? EtaSignConvention::Theorem
                                               : EtaSignConvention::Corollary;
      TopologicalData base;
      if (bs_explicit) {
        base = {bs_chi, bs_tau};
        fe.fibration = CircleOverSurface{bs_euler, 0};
      } else {
        if (bs_name.empty())
          throw CLI::ValidationError("blowup-scan", "need a metric name or --chi/--tau/--euler");
        Manifest man = load_manifest(manifest_path);
        CohomOneMetric m = find_metric(man, bs_name);
        base = m.topo;
        fe.fibration = CircleOverSurface{m.end_info.euler, 0};
      }
      int k = min_obstructed_blowups(base, fe);
      std::printf("%d\n", k);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const ManifestError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
