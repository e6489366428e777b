#include "tw/synthesis.hpp"

#include "tw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tw {

namespace {

bool is_zero(const Coeff2 &c) { return c.theta == cplx{0.0} && c.phi == cplx{0.0}; }

void accumulate(FieldSample &s, const CTensor3 &f, const RadialFields &rf) {
  s.e += f * rf.e;
  s.h += f * rf.h;
}

std::pair<cplx, cplx> solve2(cplx a, cplx b, cplx c, cplx d, cplx r0, cplx r1) {
  const cplx dt = a * d - b * c;
  const double scale = std::max({std::abs(a * d), std::abs(b * c), 1e-300});
  if (std::abs(dt) <= 1e-14 * scale)
    throw NumericalError("singular sphere matching system");
  return {(r0 * d - b * r1) / dt, (a * r1 - c * r0) / dt};
}

} // namespace

PartialWave::PartialWave(ModeIndex mode, Coeff2 c1, Coeff2 c2, RadialKind kind1,
                         RadialKind kind2)
    : mode_(mode), c1_(c1), c2_(c2), kind1_(kind1), kind2_(kind2) {
  if (mode.l() < 1)
    throw ValidationError("partial waves need l >= 1: l = 0 carries no "
                          "transverse field");
  if (kind1 == kind2)
    throw ValidationError("partial wave needs two distinct radial kinds");
}

RadialFields wave_radial_fields(const PartialWave &wave, WaveNumber k,
                                const Medium &med, double r) {
  const int l = wave.mode().l();
  const auto ez =
      homogeneous_eta_zeta(l, wave.kind1(), wave.kind2(), k, r, med);
  return full_fields(l, k, r, med, assemble_state(ez, wave.c1(), wave.c2()));
}

std::vector<FieldSample> synthesize(const std::vector<PartialWave> &waves,
                                    WaveNumber k, const Medium &med,
                                    const std::vector<SphericalPosition> &points) {
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const auto &pos : points) {
    if (!(pos.r > 0.0))
      throw ValidationError("field synthesis needs r > 0");
    const AngularPoint p(pos.theta, pos.phi);
    FieldSample s{pos, {}, {}};
    for (const auto &w : waves)
      accumulate(s, flm(w.mode(), p), wave_radial_fields(w, k, med, pos.r));
    out.push_back(s);
  }
  return out;
}

std::vector<FieldSample> synthesize(const std::vector<PartialWave> &waves,
                                    WaveNumber k, const RadialProfile &profile,
                                    const std::vector<SphericalPosition> &points,
                                    const OdeOptions &opts) {
  const double r_edge =
      profile.shells().empty() ? 0.0 : profile.shells().back().r_outer;
  const Medium &outer = profile.outer();

  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const auto &pos : points) {
    if (!(pos.r > 0.0))
      throw ValidationError("field synthesis needs r > 0");
    const AngularPoint p(pos.theta, pos.phi);
    FieldSample s{pos, {}, {}};
    for (const auto &w : waves) {
      const int l = w.mode().l();
      RadialFields rf;
      if (pos.r > r_edge) {
        rf = wave_radial_fields(w, k, outer, pos.r);
      } else {
        const auto ez =
            homogeneous_eta_zeta(l, w.kind1(), w.kind2(), k, r_edge, outer);
        const auto w_edge = assemble_state(ez, w.c1(), w.c2());
        const auto w_r = propagate(l, k, profile, r_edge, pos.r, w_edge, opts);
        rf = full_fields(l, k, pos.r, profile.medium_at(pos.r), w_r);
      }
      accumulate(s, flm(w.mode(), p), rf);
    }
    out.push_back(s);
  }
  return out;
}

namespace {

RadialFields project_once(const AngularField &field, const ModeIndex &mode,
                          const QuadratureRule &rule) {
  const auto nodes = rule.nodes();
  std::vector<CVec3> te, th;
  te.reserve(nodes.size());
  th.reserve(nodes.size());
  for (const auto &n : nodes) {
    const CTensor3 fh = hermitian(flm(mode, n.point));
    const FieldValue v = field(n.point);
    te.push_back(n.weight * (fh * v.e));
    th.push_back(n.weight * (fh * v.h));
  }
  return {pairwise_sum<CVec3>(te), pairwise_sum<CVec3>(th)};
}

double distance(const RadialFields &a, const RadialFields &b) {
  return std::max(norm(a.e - b.e), norm(a.h - b.h));
}

} // namespace

RadialFields project(const AngularField &field, const ModeIndex &mode,
                     const QuadratureRule &rule, const ProjectOptions &opts) {
  const RadialFields coarse = project_once(field, mode, rule);
  if (opts.check_convergence) {
    const RadialFields fine = project_once(field, mode, rule.refined());
    const double size = std::max({1.0, norm(coarse.e), norm(coarse.h)});
    const double change = distance(coarse, fine);
    if (change > opts.tolerance * size)
      throw NumericalError(
          "projection onto (l=" + std::to_string(mode.l()) +
          ", m=" + std::to_string(mode.m()) + ") under-resolved by the " +
          std::to_string(rule.n_theta()) + "x" + std::to_string(rule.n_phi()) +
          " rule (refinement changed the result by " + std::to_string(change) +
          ")");
  }
  return coarse;
}

RadialFields project(const std::vector<FieldSample> &samples,
                     const ModeIndex &mode, const QuadratureRule &rule) {
  const auto nodes = rule.nodes();
  if (samples.size() != nodes.size())
    throw ValidationError("sample count " + std::to_string(samples.size()) +
                          " does not match the quadrature grid (" +
                          std::to_string(nodes.size()) + " nodes)");
  std::vector<CVec3> te, th;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto &pos = samples[i].position;
    const auto &node = nodes[i].point;
    const AngularPoint p(pos.theta, pos.phi);
    const double dphi = std::abs(std::remainder(p.phi() - node.phi(), 2.0 * std::numbers::pi));
    if (std::abs(p.theta() - node.theta()) > 1e-12 || dphi > 1e-12)
      throw ValidationError("sample " + std::to_string(i) +
                            " is not at the expected quadrature node");
    const CTensor3 fh = hermitian(flm(mode, node));
    te.push_back(nodes[i].weight * (fh * samples[i].e));
    th.push_back(nodes[i].weight * (fh * samples[i].h));
  }
  return {pairwise_sum<CVec3>(te), pairwise_sum<CVec3>(th)};
}

QuadratureRule rule_from_samples(const std::vector<FieldSample> &samples) {
  if (samples.empty())
    throw ValidationError("no field samples");
  const double r = samples.front().position.r;
  std::vector<double> thetas, phis;
  auto add_unique = [](std::vector<double> &v, double x) {
    for (double y : v)
      if (std::abs(x - y) < 1e-12)
        return;
    v.push_back(x);
  };
  for (const auto &s : samples) {
    if (std::abs(s.position.r - r) > 1e-12 * std::max(1.0, r))
      throw ValidationError("projection samples must share one radius");
    add_unique(thetas, s.position.theta);
    add_unique(phis, s.position.phi);
  }
  if (thetas.size() * phis.size() != samples.size())
    throw ValidationError("samples do not form a theta x phi product grid");
  return QuadratureRule(static_cast<int>(thetas.size()),
                        static_cast<int>(phis.size()));
}

std::pair<Coeff2, Coeff2> recover_coefficients(int l, RadialKind kind1,
                                               RadialKind kind2, WaveNumber k,
                                               double r, const Medium &med,
                                               const RadialFields &projected) {
  const TangentialState w{projected.h[Theta], projected.h[Phi],
                          projected.e[Theta], projected.e[Phi]};
  return coefficients_from_state(l, kind1, kind2, k, r, med, w);
}

std::vector<MultipoleAmplitude>
multipole_amplitudes(const std::vector<PartialWave> &waves) {
  std::vector<MultipoleAmplitude> out;
  out.reserve(waves.size());
  for (const auto &w : waves) {
    const auto label = "(l=" + std::to_string(w.mode().l()) +
                       ", m=" + std::to_string(w.mode().m()) + ")";
    if (w.kind1() != RadialKind::Hankel1)
      throw ValidationError("wave " + label +
                            " is not a multipole field: kind1 must be Hankel1");
    if (!is_zero(w.c2()))
      throw ValidationError("wave " + label +
                            " is not a multipole field: c2 must vanish");
    out.push_back({w.mode(), w.c1().theta, w.c1().phi});
  }
  return out;
}

SphereMatch match_sphere(int l, WaveNumber k, const Medium &sphere,
                         const Medium &host, double radius,
                         const PartialWave &incident) {
  if (incident.mode().l() != l)
    throw ValidationError("incident wave order differs from l");
  if (incident.kind1() != RadialKind::BesselJ || !is_zero(incident.c2()))
    throw ValidationError("incident wave must be regular: kind1 = BesselJ and "
                          "c2 = 0");
  if (!(radius > 0.0))
    throw ValidationError("sphere radius must be positive");

  const double ka = k.value() * radius;
  const auto inc = spherical_radial(RadialKind::BesselJ, l, host.n() * ka);
  const auto sca = spherical_radial(RadialKind::Hankel1, l, host.n() * ka);
  const auto in = spherical_radial(RadialKind::BesselJ, l, sphere.n() * ka);

  // Unknowns (s, t): scattered Hankel1 and interior BesselJ coefficients.
  // Row 1: continuity of the theta projection (H_theta or E_theta).
  // Row 2: continuity of d(r f)/dr weighted by 1/eps (electric) or 1/mu
  // (magnetic), i.e. of E_phi or H_phi.
  auto solve = [&](cplx c, cplx w_host, cplx w_sphere) {
    const auto [s, t] =
        solve2(sca.f, -in.f, sca.d_xf / w_host, -in.d_xf / w_sphere,
               -inc.f * c, -inc.d_xf * c / w_host);
    return std::pair{s, t};
  };
  const auto [s_e, t_e] = solve(incident.c1().theta, host.eps(), sphere.eps());
  const auto [s_m, t_m] = solve(incident.c1().phi, host.mu(), sphere.mu());
  return {{s_e, s_m}, {t_e, t_m}};
}

int default_lmax(double x) {
  if (!(x >= 0.0))
    throw ValidationError("size parameter must be non-negative");
  return std::max(4, static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0)));
}

} // namespace tw
