#include "eo/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>

namespace eo {

int worker_cap() {
  if (const char* env = std::getenv("EO_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

SecondFundamentalForm second_fundamental_form_at_radius(const CohomOneMetric& g,
                                                        double R) {
  if (!(R > g.r0) || !(R < g.r1))
    throw std::invalid_argument("second_fundamental_form: radius outside domain");
  SecondFundamentalForm out;
  out.radius = R;
  out.eps = g.end_at_zero ? R : 1.0 / R;
  out.normal_sign = g.end_at_zero ? -1.0 : 1.0;

  Point p = g.orbit_point(R);
  FramePoint fg = frame_point(g.coframe(), p);
  FramePoint f0 = frame_point(g.frozen_coframe(R), p);

  // theta = -ns (omega - omega_0): classical outward sign, see header.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 1; c < 4; ++c)
        out.frame[a][b][c] =
            -out.normal_sign * (fg.gamma[a][b][c] - f0.gamma[a][b][c]);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 1; mu < 4; ++mu) {
        double v = 0;
        for (int c = 1; c < 4; ++c) v += out.frame[a][b][c] * fg.E[c][mu];
        out.coord[a][b][mu] = v;
      }
  return out;
}

SecondFundamentalForm second_fundamental_form(const CohomOneMetric& g, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("second_fundamental_form: eps <= 0");
  return second_fundamental_form_at_radius(g, g.hypersurface_radius(eps));
}

DecayFit fit_decay(const std::vector<double>& eps, const std::vector<double>& vals) {
  DecayFit fit;
  std::vector<double> lx, ly;
  for (size_t i = 0; i < eps.size(); ++i) {
    if (std::abs(vals[i]) < 1e-12) continue;  // noise floor
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(std::abs(vals[i])));
  }
  fit.points_used = int(lx.size());
  if (lx.size() < 4) return fit;
  double n = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
    syy += ly[i] * ly[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-14) return fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  double r_num = (n * sxy - sx * sy);
  double r_den = std::sqrt(denom * (n * syy - sy * sy));
  fit.r_squared = r_den > 0 ? (r_num / r_den) * (r_num / r_den) : 0.0;
  fit.valid = fit.r_squared > 0.99;
  return fit;
}

SweepResult cs_sweep(const CohomOneMetric& g, std::vector<double> eps_schedule) {
  if (g.end != EndType::FiberedBoundary && g.end != EndType::FiberedCusp)
    throw std::invalid_argument(
        "cs_sweep: metric end is not fibered (cone ends are handled by the "
        "alpha invariant path)");
  if (g.end_info.fiber_dim < 1)
    throw std::invalid_argument("cs_sweep: point fiber; limit is nonzero");
  std::sort(eps_schedule.begin(), eps_schedule.end(), std::greater<>());
  eps_schedule.erase(std::unique(eps_schedule.begin(), eps_schedule.end()),
                     eps_schedule.end());

  auto row_of = [&g](double eps) {
    double R = g.hypersurface_radius(eps);
    HypersurfaceCS h = hypersurface_cs_data(g, R);
    SweepRow row;
    row.eps = eps;
    row.cs_euler = cs_euler_explicit(h);
    row.cs_signature = cs_signature_explicit(h);
    double ge = transgression_cs(PolyTag::Pfaffian4, h);
    double gs = transgression_cs(PolyTag::P1Over3, h);
    row.cross_check_error = std::max(std::abs(ge - row.cs_euler),
                                     std::abs(gs - row.cs_signature));
    return row;
  };

  SweepResult out;
  out.rows.resize(eps_schedule.size());
  int cap = worker_cap();
  if (cap > 1 && eps_schedule.size() > 1) {
    std::vector<std::future<SweepRow>> futs;
    futs.reserve(eps_schedule.size());
    for (double e : eps_schedule)
      futs.push_back(std::async(std::launch::async, row_of, e));
    for (size_t i = 0; i < futs.size(); ++i) out.rows[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < eps_schedule.size(); ++i)
      out.rows[i] = row_of(eps_schedule[i]);
  }

  std::vector<double> eu, si;
  for (const auto& r : out.rows) {
    eu.push_back(r.cs_euler);
    si.push_back(r.cs_signature);
  }
  out.euler_fit = fit_decay(eps_schedule, eu);
  out.signature_fit = fit_decay(eps_schedule, si);
  return out;
}

AlphaResult alpha_invariant(const LinkMetric& link) {
  if (!link.closed_oriented)
    throw std::invalid_argument("alpha_invariant: link must be closed and oriented");
  AlphaResult out;
  out.boundary_volume = boundary_volume(link);

  FramePoint fp = frame_point(link.coframe(), link.sample_point());
  auto eps3 = [](int a, int b, int c) {
    return double((b - a) * (c - a) * (c - b)) / 2.0;
  };
  // Top coefficient (along e^0^e^1^e^2) of eps_abc w^a ^ Omega^b_c and of
  // eps_abc w^a ^ w^b ^ w^c.
  double t_omega = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double e = eps3(a, b, c);
        if (e == 0.0) continue;
        for (int d = 0; d < 3; ++d)
          for (int f = 0; f < 3; ++f)
            t_omega += e * 0.5 * fp.R[b][c][d][f] * eps3(a, d, f);
      }
  double t_www = 6.0;  // eps_abc e^a ^ e^b ^ e^c = 6 dvol

  double inv8 = 1.0 / (8.0 * M_PI * M_PI);
  out.form_bracket = inv8 * (t_omega - t_www) * out.boundary_volume;
  out.form_subtracted = inv8 * t_omega * out.boundary_volume -
                        (3.0 / (4.0 * M_PI * M_PI)) * out.boundary_volume;
  out.alpha = out.form_bracket;
  return out;
}

double boundary_volume(const LinkMetric& link) {
  if (!link.closed_oriented)
    throw std::invalid_argument("boundary_volume: link must be closed and oriented");
  return link.volume();
}

}  // namespace eo
