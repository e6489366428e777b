// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "oracles/mie_series.hpp"
#include "tw/errors.hpp"
#include "tw/field_checks.hpp"
#include "tw/harmonics.hpp"
#include "tw/synthesis.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace tw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<ModeIndex> modes_up_to(int lmax, int lmin) {
  std::vector<ModeIndex> out;
  for (int l = lmin; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m)
      out.emplace_back(l, m);
  return out;
}

std::vector<AngularPoint> random_points(int n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0), p(0.0, 2.0 * std::numbers::pi);
  std::vector<AngularPoint> pts;
  for (int i = 0; i < n; ++i)
    pts.emplace_back(std::acos(c(rng)), p(rng));
  return pts;
}

// 1 and 2 share one sweep over all mode pairs.
struct OrthoSweep {
  double gram = 0.0, scalar = 0.0, vector = 0.0, cross = 0.0, refine = 0.0, seconds = 0.0;
};

OrthoSweep ortho_sweep() {
  const auto t0 = Clock::now();
  const auto modes = modes_up_to(6, 1);
  const auto rule = QuadratureRule::for_degree(6);
  const auto t = overlap_table(modes, rule);
  const auto fine = overlap_table(modes, rule.refined());
  OrthoSweep s;
  const std::size_t n = modes.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t k = a * n + b;
      const double d = a == b ? 1.0 : 0.0;
      s.gram = std::max(s.gram, max_abs(t.gram[k] - d * CTensor3::identity()));
      s.scalar = std::max(s.scalar, std::abs(t.scalar[k] - d));
      s.vector = std::max(s.vector, std::abs(t.vector[k] - d));
      s.cross = std::max(s.cross, std::abs(t.cross[k]));
      s.refine = std::max(s.refine, max_abs(fine.gram[k] - t.gram[k]));
    }
  s.seconds = seconds_since(t0);
  return s;
}

Outcome criterion_1(const OrthoSweep &s) {
  const bool ok = s.gram < 1e-10 && s.refine < 1e-10 && s.seconds < 30.0;
  return {ok, "max |Gram - 1 delta| = " + sci(s.gram) + ", refinement change " + sci(s.refine) +
                  " (tol 1e-10), " + sci(s.seconds) + " s (limit 30 s)"};
}

Outcome criterion_2(const OrthoSweep &s) {
  const double worst = std::max({s.scalar, s.vector, s.cross});
  return {worst < 1e-10, "Y " + sci(s.scalar) + ", X " + sci(s.vector) + ", e_r.(X* x X) " +
                             sci(s.cross) + " (tol 1e-10)"};
}

Outcome criterion_3() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  const CVec3 er = CVec3::e_r();
  for (const auto &mode : modes_up_to(6, 0))
    for (const auto &p : random_points(100, rng)) {
      const CTensor3 f = flm(mode, p);
      const cplx y = ylm(mode, p.theta(), p.phi());
      const CVec3 x = xlm(mode, p);
      const cplx xx = dot(x, x);
      const double s = std::max(frobenius(f), 1e-300);
      const CTensor3 adj = adjoint(f);
      const CTensor3 adj_closed = xx * dyad(er, er) + y * dyad(CVec3::e_theta(), x) +
                                  y * dyad(CVec3::e_phi(), cross(er, x));
      const cplx tr = trace(f);
      worst = std::max({worst, std::abs(tr - (y + 2.0 * x[Theta])) / s,
                        std::abs(det(f) - y * xx) / (s * s * s),
                        max_abs(adj - adj_closed) / (s * s),
                        max_abs(adj * f - det(f) * CTensor3::identity()) / (s * s * s),
                        std::abs(trace(adj) - (xx + 2.0 * y * x[Theta])) / (s * s),
                        std::abs(trace(f * f) - (tr * tr - 2.0 * trace(adj))) / (s * s)});
    }
  return {worst < 1e-12, "max relative error " + sci(worst) + " over 100 points x 49 modes (tol 1e-12)"};
}

Outcome criterion_4() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (const auto &mode : modes_up_to(6, 0))
    for (const auto &p : random_points(20, rng)) {
      if (std::sin(p.theta()) < 1e-6)
        continue;
      worst = std::max({worst, l_squared_check(mode, p), lz_check(mode, p)});
      if (mode.l() == 0)
        continue;
      const double lam = std::sqrt(double(mode.l()) * (mode.l() + 1));
      worst = std::max({worst, std::abs(l_dot_xlm(mode, p) - lam * ylm(mode, p.theta(), p.phi())),
                        std::abs(l_dot_er_cross_xlm(mode, p))});
    }
  return {worst < 1e-10, "max residual " + sci(worst) + " (tol 1e-10)"};
}

double state_diff(const TangentialState &a, const TangentialState &b) {
  double d = 0.0, s = 0.0;
  const CVec4 x = a.as_array(), y = b.as_array();
  for (std::size_t i = 0; i < 4; ++i) {
    d = std::max(d, std::abs(x[i] - y[i]));
    s = std::max(s, std::abs(y[i]));
  }
  return d / s;
}

Outcome criterion_5() {
  const WaveNumber k(1.0);
  const Medium glass(2.25, 1.0), lossy({1.8, 0.2}, 1.0);
  double ode_res = 0.0, sys_res = 0.0;
  for (int l = 1; l <= 4; ++l)
    for (const Medium *med : {&glass, &lossy}) {
      // second-order W_theta equation along kr in [0.5, 10]
      const double r0 = 0.5 / std::abs(med->n()), h = 0.002;
      std::vector<cplx> samples;
      for (double r = r0; std::abs(med->n()) * r <= 10.0; r += h)
        samples.push_back(spherical_radial(RadialKind::Hankel1, l, med->n() * k.value() * r).f);
      ode_res = std::max(ode_res, wtheta_ode_residual(l, k, *med, r0, h, samples));
      // first-order system by fourth-order differences of r W
      for (double kr : {0.5, 2.0, 5.0, 10.0}) {
        const double r = kr / k.value(), dr = 1e-3 * r;
        const Coeff2 c1{{0.3, 0.1}, 1.0}, c2{-0.4, {0.0, 0.7}};
        auto ru = [&](double rr) {
          CVec4 v = assemble_state(homogeneous_eta_zeta(l, RadialKind::BesselJ,
                                                        RadialKind::BesselSecond, k, rr, *med),
                                   c1, c2)
                        .as_array();
          for (auto &x : v)
            x *= rr;
          return v;
        };
        const CVec4 a = ru(r + 2 * dr), b = ru(r + dr), c = ru(r - dr), d = ru(r - 2 * dr);
        const CVec4 rhs = mat_vec(system_matrix(l, k, r, *med), ru(r));
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
          const cplx lhs = (-a[i] + 8.0 * b[i] - 8.0 * c[i] + d[i]) / (12.0 * dr);
          num = std::max(num, std::abs(lhs - I_unit * k.value() * rhs[i]));
          den = std::max(den, std::abs(lhs));
        }
        sys_res = std::max(sys_res, num / den);
      }
    }

  double transfer = 0.0;
  const RadialProfile one({}, glass);
  const RadialProfile two({{3.0, glass}, {6.0, lossy}}, Medium::vacuum());
  const TangentialState w0{1.0, {0.0, 0.5}, -0.25, {0.3, -0.3}};
  for (int l = 1; l <= 4; ++l) {
    const auto t1 = closed_form_transfer(l, k, glass, 0.5, 10.0);
    transfer = std::max(transfer, state_diff(propagate(l, k, one, 0.5, 10.0, w0),
                                             TangentialState::from_array(mat_vec(t1, w0.as_array()))));
    const auto t2 = mat_mul(closed_form_transfer(l, k, Medium::vacuum(), 6.0, 10.0),
                            mat_mul(closed_form_transfer(l, k, lossy, 3.0, 6.0),
                                    closed_form_transfer(l, k, glass, 0.5, 3.0)));
    transfer = std::max(transfer, state_diff(propagate(l, k, two, 0.5, 10.0, w0),
                                             TangentialState::from_array(mat_vec(t2, w0.as_array()))));
  }
  const bool ok = ode_res < 1e-6 && sys_res < 1e-6 && transfer < 1e-8;
  return {ok, "W_theta residual " + sci(ode_res) + ", system residual " + sci(sys_res) +
                  " (tol 1e-6); propagator vs closed form " + sci(transfer) + " (tol 1e-8)"};
}

Outcome criterion_6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ur(0.8, 5.0), ut(0.2, 2.9),
      up(0.0, 6.2);
  const WaveNumber k(1.3);
  const Medium med({1.7, 0.05}, 1.2);
  double worst = 0.0;
  for (int set = 0; set < 5; ++set) {
    std::vector<PartialWave> waves;
    for (int l = 1; l <= 3; ++l)
      for (int m = -l; m <= l; ++m)
        waves.emplace_back(ModeIndex(l, m), Coeff2{{u(rng), u(rng)}, {u(rng), u(rng)}},
                           Coeff2{{u(rng), u(rng)}, {u(rng), u(rng)}});
    const auto field = expansion_field(waves, k, med);
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst,
                       maxwell_curl_residual(field, k, med, {ur(rng), ut(rng), up(rng)}).worst());
  }
  return {worst < 1e-5, "max curl residual " + sci(worst) + " over 5 sets x 4 points (tol 1e-5)"};
}

Outcome criterion_7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const WaveNumber k(1.0);
  const Medium med(1.44, 1.0);
  const double r = 1.7;
  std::vector<PartialWave> waves;
  for (int l = 1; l <= 5; ++l)
    for (int m = -l; m <= l; ++m)
      waves.emplace_back(ModeIndex(l, m), Coeff2{{u(rng), u(rng)}, {u(rng), u(rng)}},
                         Coeff2{{u(rng), u(rng)}, {u(rng), u(rng)}}, RadialKind::BesselJ,
                         RadialKind::BesselSecond);
  const auto rule = QuadratureRule::for_degree(6);
  std::vector<SphericalPosition> pts;
  for (const auto &n : rule.nodes())
    pts.push_back({r, n.point.theta(), n.point.phi()});
  const auto samples = synthesize(waves, k, med, pts);
  double coeff = 0.0, leak = 0.0;
  for (const auto &w : waves) {
    const auto [c1, c2] = recover_coefficients(w.mode().l(), w.kind1(), w.kind2(), k, r, med,
                                               project(samples, w.mode(), rule));
    coeff = std::max({coeff, std::abs(c1.theta - w.c1().theta), std::abs(c1.phi - w.c1().phi),
                      std::abs(c2.theta - w.c2().theta), std::abs(c2.phi - w.c2().phi)});
  }
  for (int m = -6; m <= 6; ++m) {
    const auto p = project(samples, ModeIndex(6, m), rule);
    leak = std::max({leak, norm(p.e), norm(p.h)});
  }
  return {coeff < 1e-10 && leak < 1e-10,
          "coefficient error " + sci(coeff) + ", leakage into l = 6 " + sci(leak) + " (tol 1e-10)"};
}

Outcome criterion_8() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double x : {0.5, 3.0})
    for (cplx n : {cplx{1.33, 0.0}, cplx{1.5, 0.1}}) {
      const int lmax = default_lmax(x);
      const auto ref = oracle::mie(n, x, lmax);
      for (int l = 1; l <= lmax; ++l) {
        const PartialWave inc(ModeIndex(l, 0), {1.0, 1.0}, {}, RadialKind::BesselJ,
                              RadialKind::BesselSecond);
        const auto m = match_sphere(l, WaveNumber(1.0), Medium(n * n, 1.0), Medium::vacuum(), x, inc);
        const cplx a = ref.a[std::size_t(l - 1)], b = ref.b[std::size_t(l - 1)];
        // scattered / incident = -(a_l, b_l)
        worst = std::max({worst, std::abs(-m.scattered.theta - a) / std::abs(a),
                          std::abs(-m.scattered.phi - b) / std::abs(b)});
      }
    }
  const double secs = seconds_since(t0);
  return {worst < 1e-9 && secs < 10.0,
          "max relative deviation " + sci(worst) + " (tol 1e-9), " + sci(secs) + " s (limit 10 s)"};
}

template <class E, class F> bool throws(F &&f) {
  try {
    f();
  } catch (const E &) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

Outcome criterion_9() {
  const WaveNumber k(1.0);
  const Medium med(2.0, 1.0);
  const double r0 = 1.0, h = 0.005;
  auto samples = [&](int l, double kk) {
    std::vector<cplx> s;
    for (int i = 0; i < 400; ++i)
      s.push_back(spherical_radial(RadialKind::BesselJ, l, med.n() * kk * (r0 + i * h)).f);
    return s;
  };
  const double good = wtheta_ode_residual(2, k, med, r0, h, samples(2, 1.0));
  const double wrong_l = wtheta_ode_residual(2, k, med, r0, h, samples(3, 1.0));
  const double wrong_k = wtheta_ode_residual(2, k, med, r0, h, samples(2, 1.05));
  std::vector<cplx> noise;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 400; ++i)
    noise.emplace_back(g(rng), g(rng));
  const double random = wtheta_ode_residual(2, k, med, r0, h, noise);
  const bool residual_ok = good < 1e-6 && wrong_l > 1e-3 && wrong_k > 1e-3 && random > 1e-3;

  const bool m_rejected = throws<ValidationError>([] { ModeIndex(1, 3); });
  const bool l0_solver = throws<ValidationError>([&] { system_matrix(0, k, 1.0, med); });
  const bool l0_wave = throws<ValidationError>([] { PartialWave(ModeIndex(0, 0), {}, {}); });
  const bool l0_match = throws<ValidationError>([&] {
    match_sphere(0, k, med, Medium::vacuum(), 1.0,
                 PartialWave(ModeIndex(0, 0), {1.0, 0.0}, {}, RadialKind::BesselJ,
                             RadialKind::BesselSecond));
  });
  const bool ok = residual_ok && m_rejected && l0_solver && l0_wave && l0_match;
  return {ok, "residual: solution " + sci(good) + ", wrong l " + sci(wrong_l) + ", wrong k " +
                  sci(wrong_k) + ", noise " + sci(random) + "; |m|>l rejected " +
                  (m_rejected ? "yes" : "no") + ", l=0 rejected " +
                  (l0_solver && l0_wave && l0_match ? "yes" : "no")};
}

} // namespace

int main() {
  const OrthoSweep sweep = ortho_sweep();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 F_lm orthonormality, 1 <= l, l' <= 6", [&] { return criterion_1(sweep); }},
      {"2 scalar/vector/cross orthogonality", [&] { return criterion_2(sweep); }},
      {"3 invariant identities at 100 points per mode", criterion_3},
      {"4 angular momentum eigenrelations", criterion_4},
      {"5 radial consistency and shell transfer", criterion_5},
      {"6 Maxwell curl residual of synthesized fields", criterion_6},
      {"7 projection round trip, l <= 5", criterion_7},
      {"8 sphere match vs textbook Mie oracle", criterion_8},
      {"9 negative controls", criterion_9},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
