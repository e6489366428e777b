#include "verify.hpp"

#include "io.hpp"

#include "tw/errors.hpp"
#include "tw/field_checks.hpp"
#include "tw/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twcli {

using namespace tw;

namespace {

std::vector<ModeIndex> modes_up_to(int lmax, int lmin = 1) {
  std::vector<ModeIndex> out;
  for (int l = lmin; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m)
      out.emplace_back(l, m);
  return out;
}

std::string label(const ModeIndex &m) {
  return "(l=" + std::to_string(m.l()) + ", m=" + std::to_string(m.m()) + ")";
}

void require_lmax(int lmax, int lmin) {
  if (lmax < lmin)
    throw ValidationError("--lmax must be at least " + std::to_string(lmin));
  if (lmax > 40)
    throw ValidationError("--lmax above 40 is not supported by the verify suites");
}

// Running maximum that remembers where it was attained. Ties keep the
// earlier entry, so the result does not depend on evaluation order as long
// as updates arrive in a fixed order.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string &w) {
    if (v > value || std::isnan(v)) {
      if (std::isnan(value))
        return;
      value = v;
      where = w;
    }
  }
};

CheckResult finish(std::string name, const Worst &w, double tol) {
  return {std::move(name), w.value, tol, w.where};
}

// Spherical Fibonacci lattice: n well-spread points avoiding the poles.
std::vector<AngularPoint> fibonacci_points(int n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<AngularPoint> pts;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    pts.emplace_back(std::acos(z), std::fmod(i * golden, 2.0 * std::numbers::pi));
  }
  return pts;
}

std::string point_label(const AngularPoint &p) {
  return "theta=" + fmt(p.theta()) + ", phi=" + fmt(p.phi());
}

} // namespace

std::vector<CheckResult> verify_ortho(int lmax, std::optional<double> tol_opt) {
  require_lmax(lmax, 1);
  const double tol = tol_opt.value_or(1e-10);
  const auto modes = modes_up_to(lmax);
  const auto rule = QuadratureRule::for_degree(lmax);
  const auto t = overlap_table(modes, rule);
  const auto fine = overlap_table(modes, rule.refined());

  Worst gram, scalar, vector, cross, refine;
  const std::size_t n = modes.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t k = a * n + b;
      const double delta = a == b ? 1.0 : 0.0;
      const std::string pair = label(modes[a]) + " x " + label(modes[b]);
      gram.update(max_abs(t.gram[k] - delta * CTensor3::identity()), pair);
      scalar.update(std::abs(t.scalar[k] - delta), pair);
      vector.update(std::abs(t.vector[k] - delta), pair);
      cross.update(std::abs(t.cross[k]), pair);
      refine.update(max_abs(fine.gram[k] - t.gram[k]), pair);
    }
  return {finish("orthonormality_F", gram, tol), finish("orthonormality_Y", scalar, tol),
          finish("orthonormality_X", vector, tol), finish("cross_X_eX", cross, tol),
          finish("quadrature_refinement", refine, tol)};
}

std::vector<CheckResult> verify_invariants(int lmax, std::optional<double> tol_opt) {
  require_lmax(lmax, 1);
  const double tol = tol_opt.value_or(1e-12);
  const auto modes = modes_up_to(lmax);
  const auto points = fibonacci_points(100);

  enum { kTrace, kDet, kAdj, kTrAdj, kTrSq, kTwoPath, kCount };
  static const char *names[kCount] = {"trace",         "determinant",   "adjugate",
                                      "trace_adjugate", "trace_square", "two_path_F"};
  std::vector<std::array<Worst, kCount>> per_mode(modes.size());

  parallel_for(modes.size(), [&](std::size_t i) {
    const ModeIndex &mode = modes[i];
    auto &w = per_mode[i];
    const CVec3 er = CVec3::e_r();
    for (const auto &p : points) {
      const CTensor3 f = flm(mode, p);
      const cplx y = ylm(mode, p.theta(), p.phi());
      const CVec3 x = xlm(mode, p);
      const cplx xx = dot(x, x);
      const double s = std::max(frobenius(f), 1e-300);
      const CTensor3 adj = adjoint(f);
      const CTensor3 adj_closed = xx * dyad(er, er) + y * dyad(CVec3::e_theta(), x) +
                                  y * dyad(CVec3::e_phi(), cross(er, x));
      const cplx tr = trace(f);
      const std::string where = label(mode) + " at " + point_label(p);
      w[kTrace].update(std::abs(tr - (y + 2.0 * x[Theta])) / s, where);
      w[kDet].update(std::abs(det(f) - y * xx) / (s * s * s), where);
      w[kAdj].update(max_abs(adj - adj_closed) / (s * s), where);
      w[kTrAdj].update(std::abs(trace(adj) - (xx + 2.0 * y * x[Theta])) / (s * s), where);
      w[kTrSq].update(std::abs(trace(f * f) - (tr * tr - 2.0 * trace(adj))) / (s * s), where);
      w[kTwoPath].update(max_abs(flm_explicit(mode, p) - f) / s, where);
    }
  });

  std::vector<CheckResult> out;
  for (int c = 0; c < kCount; ++c) {
    Worst total;
    for (const auto &w : per_mode)
      total.update(w[std::size_t(c)].value, w[std::size_t(c)].where);
    out.push_back(finish(names[c], total, tol));
  }
  return out;
}

std::vector<CheckResult> verify_maxwell(int lmax, std::optional<double> tol_opt) {
  require_lmax(lmax, 1);
  const double tol = tol_opt.value_or(1e-5);
  const WaveNumber k(1.2);
  const std::vector<Medium> media{Medium::vacuum(), Medium(2.25, 1.0),
                                  Medium({2.0, 0.2}, {1.3, 0.0})};
  const std::vector<SphericalPosition> points{{0.7, 0.4, 0.3}, {1.9, 1.3, 2.9},
                                              {4.3, 2.5, 5.1}, {2.6, 0.9, 4.0},
                                              {1.1, 2.0, 1.5}, {3.4, 1.7, 0.8}};

  struct Job {
    int l;
    std::size_t medium;
  };
  std::vector<Job> jobs;
  for (int l = 1; l <= lmax; ++l)
    for (std::size_t mi = 0; mi < media.size(); ++mi)
      jobs.push_back({l, mi});

  std::vector<std::array<Worst, 3>> per_job(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    const int l = jobs[j].l;
    const Medium &med = media[jobs[j].medium];
    std::vector<PartialWave> waves;
    for (int m = -l; m <= l; ++m) {
      const double a = l + 0.37 * m;
      waves.emplace_back(ModeIndex(l, m), Coeff2{{std::cos(a), std::sin(2 * a)}, {0.5, std::cos(3 * a)}},
                         Coeff2{{std::sin(a), 0.25}, {std::cos(5 * a), -std::sin(a)}},
                         RadialKind::BesselJ, RadialKind::Hankel1);
    }
    const PointField field = expansion_field(waves, k, med);
    for (const auto &p : points) {
      const auto res = maxwell_curl_residual(field, k, med, p);
      std::ostringstream where;
      where << "l=" << l << ", eps=" << fmt(med.eps().real()) << "+" << fmt(med.eps().imag())
            << "i, r=" << fmt(p.r) << ", theta=" << fmt(p.theta) << ", phi=" << fmt(p.phi);
      per_job[j][0].update(res.faraday, where.str());
      per_job[j][1].update(res.ampere, where.str());
      per_job[j][2].update(divergence_residual(field, med, p), where.str());
    }
  });

  static const char *names[3] = {"faraday_curl", "ampere_curl", "divergence"};
  std::vector<CheckResult> out;
  for (std::size_t c = 0; c < 3; ++c) {
    Worst total;
    for (const auto &w : per_job)
      total.update(w[c].value, w[c].where);
    out.push_back(finish(names[c], total, tol));
  }
  return out;
}

} // namespace twcli
