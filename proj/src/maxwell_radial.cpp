#include "tw/maxwell_radial.hpp"

#include "tw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tw {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_transverse_order(int l) {
  if (l < 1)
    throw ValidationError(
        "l = " + std::to_string(l) +
        " has no transverse field (X_00 = 0 forces E_r = H_r = 0); "
        "the radial Maxwell solver needs l >= 1");
}

void require_positive_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw ValidationError("radius must be positive and finite (the radial "
                          "system is singular at r = 0)");
}

double lambda2(int l) { return double(l) * (l + 1); }

cplx det2(cplx a, cplx b, cplx c, cplx d) { return a * d - b * c; }

// Solve [[a, b], [c, d]] x = rhs by Cramer's rule.
std::pair<cplx, cplx> solve2(cplx a, cplx b, cplx c, cplx d, cplx r0, cplx r1) {
  const cplx dt = det2(a, b, c, d);
  const double scale = std::max({std::abs(a * d), std::abs(b * c), 1e-300});
  if (std::abs(dt) <= 1e-14 * scale)
    throw NumericalError("degenerate radial basis: solution pair is not "
                         "independent at this radius");
  return {(r0 * d - b * r1) / dt, (a * r1 - c * r0) / dt};
}

} // namespace

Medium::Medium(cplx eps, cplx mu) : eps_(eps), mu_(mu) {
  if (!finite(eps) || !finite(mu))
    throw ValidationError("medium parameters must be finite");
  if (eps == cplx{0.0} || mu == cplx{0.0})
    throw ValidationError("medium requires eps != 0 and mu != 0");
}

cplx Medium::n() const {
  cplx n = std::sqrt(eps_ * mu_);
  if (n.imag() < 0.0 || (n.imag() == 0.0 && n.real() < 0.0))
    n = -n;
  return n;
}

WaveNumber::WaveNumber(double k) : k_(k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw ValidationError("wavenumber k must be positive and finite");
}

RadialProfile::RadialProfile(std::vector<Shell> shells, Medium outer)
    : shells_(std::move(shells)), outer_(outer) {
  double prev = 0.0;
  for (const auto &s : shells_) {
    if (!(s.r_outer > prev) || !std::isfinite(s.r_outer))
      throw ValidationError("shell radii must be positive and strictly "
                            "increasing");
    prev = s.r_outer;
  }
}

const Medium &RadialProfile::medium_at(double r) const {
  for (const auto &s : shells_)
    if (r <= s.r_outer)
      return s.medium;
  return outer_;
}

CMat4 system_matrix(int l, WaveNumber k, double r, const Medium &med) {
  require_transverse_order(l);
  require_positive_radius(r);
  const double kr = k.value() * r;
  const cplx kappa = lambda2(l) / (med.eps() * med.mu() * kr * kr);
  // A on (theta, phi): e_r^x maps e_th -> e_ph, e_ph -> -e_th
  const cplx a_tp = -1.0;
  const cplx a_pt = 1.0 - kappa;
  CMat4 m{};
  m[0][3] = med.eps() * a_tp;
  m[1][2] = med.eps() * a_pt;
  m[2][1] = -med.mu() * a_tp;
  m[3][0] = -med.mu() * a_pt;
  return m;
}

EtaZeta homogeneous_eta_zeta(int l, RadialKind kind1, RadialKind kind2,
                             WaveNumber k, double r, const Medium &med) {
  require_transverse_order(l);
  require_positive_radius(r);
  const double kr = k.value() * r;
  const cplx x = med.n() * kr;
  auto block = [&](RadialKind kind, Tangential2 &eta, Tangential2 &zeta) {
    const auto [f, d] = spherical_radial(kind, l, x);
    eta = {{{f, 0.0}, {0.0, -I_unit * d / (med.mu() * kr)}}};
    zeta = {{{0.0, f}, {I_unit * d / (med.eps() * kr), 0.0}}};
  };
  EtaZeta out;
  block(kind1, out.eta1, out.zeta1);
  block(kind2, out.eta2, out.zeta2);
  return out;
}

TangentialState assemble_state(const EtaZeta &ez, const Coeff2 &c1,
                               const Coeff2 &c2) {
  auto act = [](const Tangential2 &t, const Coeff2 &c) {
    return std::pair{t[0][0] * c.theta + t[0][1] * c.phi,
                     t[1][0] * c.theta + t[1][1] * c.phi};
  };
  const auto h1 = act(ez.eta1, c1), h2 = act(ez.eta2, c2);
  const auto e1 = act(ez.zeta1, c1), e2 = act(ez.zeta2, c2);
  return {h1.first + h2.first, h1.second + h2.second, e1.first + e2.first,
          e1.second + e2.second};
}

std::pair<cplx, cplx> wphi_from_wtheta(int l, WaveNumber k, double r,
                                       const Medium &med,
                                       std::pair<cplx, cplx> d_r_wtheta) {
  require_transverse_order(l);
  require_positive_radius(r);
  const auto [d_rh, d_re] = d_r_wtheta;
  const cplx pre = I_unit / (k.value() * r * med.eps() * med.mu());
  return {pre * (-med.eps() * d_re), pre * (med.mu() * d_rh)};
}

Longitudinal longitudinal_components(int l, WaveNumber k, double r,
                                     const Medium &med,
                                     const TangentialState &w) {
  require_transverse_order(l);
  require_positive_radius(r);
  const double lam = std::sqrt(lambda2(l));
  const double kr = k.value() * r;
  return {-lam * w.h_theta / (med.eps() * kr), lam * w.e_theta / (med.mu() * kr)};
}

RadialFields full_fields(int l, WaveNumber k, double r, const Medium &med,
                         const TangentialState &w) {
  const auto lon = longitudinal_components(l, k, r, med, w);
  return {{lon.e_r, w.e_theta, w.e_phi}, {lon.h_r, w.h_theta, w.h_phi}};
}

CMat4 solution_matrix(int l, RadialKind kind1, RadialKind kind2, WaveNumber k,
                      double r, const Medium &med) {
  const auto ez = homogeneous_eta_zeta(l, kind1, kind2, k, r, med);
  CMat4 s{};
  for (int j = 0; j < 4; ++j) {
    Coeff2 c1, c2;
    (j == 0 ? c1.theta : j == 1 ? c1.phi : j == 2 ? c2.theta : c2.phi) = 1.0;
    const CVec4 col = assemble_state(ez, c1, c2).as_array();
    for (int i = 0; i < 4; ++i)
      s[std::size_t(i)][std::size_t(j)] = col[std::size_t(i)];
  }
  return s;
}

std::pair<Coeff2, Coeff2> coefficients_from_state(int l, RadialKind kind1,
                                                  RadialKind kind2,
                                                  WaveNumber k, double r,
                                                  const Medium &med,
                                                  const TangentialState &w) {
  const auto ez = homogeneous_eta_zeta(l, kind1, kind2, k, r, med);
  // electric polarization: (H_theta, E_phi) <- (c1_theta, c2_theta)
  const auto [c1t, c2t] =
      solve2(ez.eta1[0][0], ez.eta2[0][0], ez.zeta1[1][0], ez.zeta2[1][0],
             w.h_theta, w.e_phi);
  // magnetic polarization: (E_theta, H_phi) <- (c1_phi, c2_phi)
  const auto [c1p, c2p] =
      solve2(ez.zeta1[0][1], ez.zeta2[0][1], ez.eta1[1][1], ez.eta2[1][1],
             w.e_theta, w.h_phi);
  return {{c1t, c1p}, {c2t, c2p}};
}

CMat4 closed_form_transfer(int l, WaveNumber k, const Medium &med, double r0,
                           double r1) {
  constexpr auto J = RadialKind::BesselJ;
  constexpr auto Y = RadialKind::BesselSecond;
  const CMat4 s1 = solution_matrix(l, J, Y, k, r1, med);
  CMat4 t{};
  for (int j = 0; j < 4; ++j) {
    CVec4 unit{};
    unit[std::size_t(j)] = 1.0;
    const auto [c1, c2] = coefficients_from_state(
        l, J, Y, k, r0, med, TangentialState::from_array(unit));
    const CVec4 col = mat_vec(s1, {c1.theta, c1.phi, c2.theta, c2.phi});
    for (int i = 0; i < 4; ++i)
      t[std::size_t(i)][std::size_t(j)] = col[std::size_t(i)];
  }
  return t;
}

CMat4 numerical_transfer(int l, WaveNumber k, const MediumFunction &medium,
                         double r_from, double r_to, const OdeOptions &opts) {
  require_transverse_order(l);
  require_positive_radius(r_from);
  require_positive_radius(r_to);
  const double kv = k.value();
  // U(r) with (r W)(r) = U(r) (r W)(r_from), stored row-major
  const OdeRhsN<16> rhs = [&](double r, const CVec16 &u) {
    const CMat4 m = system_matrix(l, k, r, medium(r));
    CVec16 out{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        cplx acc = 0.0;
        for (std::size_t q = 0; q < 4; ++q)
          acc += m[i][q] * u[4 * q + j];
        out[4 * i + j] = I_unit * kv * acc;
      }
    return out;
  };
  CVec16 u{};
  for (std::size_t i = 0; i < 4; ++i)
    u[5 * i] = 1.0;
  u = integrate_dopri5<16>(rhs, r_from, r_to, u, opts);
  CMat4 t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      t[i][j] = u[4 * i + j] * (r_from / r_to);
  return t;
}

CMat4 numerical_transfer(int l, WaveNumber k, const RadialProfile &profile,
                         double r_from, double r_to, const OdeOptions &opts) {
  require_transverse_order(l);
  require_positive_radius(r_from);
  require_positive_radius(r_to);

  // segment breakpoints strictly between the end points
  std::vector<double> cuts{r_from};
  const double lo = std::min(r_from, r_to), hi = std::max(r_from, r_to);
  std::vector<double> inner;
  for (const auto &s : profile.shells())
    if (s.r_outer > lo && s.r_outer < hi)
      inner.push_back(s.r_outer);
  if (r_to < r_from)
    std::reverse(inner.begin(), inner.end());
  cuts.insert(cuts.end(), inner.begin(), inner.end());
  cuts.push_back(r_to);

  // W is carried across each boundary unchanged
  CMat4 t{};
  for (std::size_t i = 0; i < 4; ++i)
    t[i][i] = 1.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const Medium &med = profile.medium_at(0.5 * (a + b));
    t = mat_mul(numerical_transfer(l, k, MediumFunction([&med](double) { return med; }),
                                   a, b, opts),
                t);
  }
  return t;
}

TangentialState propagate(int l, WaveNumber k, const MediumFunction &medium,
                          double r_from, double r_to,
                          const TangentialState &w_init,
                          const OdeOptions &opts) {
  return TangentialState::from_array(mat_vec(
      numerical_transfer(l, k, medium, r_from, r_to, opts), w_init.as_array()));
}

TangentialState propagate(int l, WaveNumber k, const RadialProfile &profile,
                          double r_from, double r_to,
                          const TangentialState &w_init,
                          const OdeOptions &opts) {
  return TangentialState::from_array(mat_vec(
      numerical_transfer(l, k, profile, r_from, r_to, opts), w_init.as_array()));
}

double wtheta_ode_residual(int l, WaveNumber k, const Medium &med, double r0,
                           double h, std::span<const cplx> samples) {
  if (samples.size() < 5)
    throw ValidationError("W_theta residual needs at least 5 radial samples");
  require_positive_radius(r0);
  if (!(h > 0.0))
    throw ValidationError("radial grid spacing must be positive");
  const double kv = k.value();
  const double lam2 = lambda2(l);
  const double resolution =
      h * std::max(std::abs(med.n()) * kv, std::sqrt(lam2) / r0);
  if (resolution > 0.1)
    throw ValidationError("radial grid too coarse for the W_theta residual "
                          "(h * local wavenumber = " +
                          std::to_string(resolution) + " > 0.1)");

  const cplx k2em = kv * kv * med.eps() * med.mu();
  std::vector<cplx> u(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    u[i] = (r0 + double(i) * h) * samples[i];

  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 2; i + 2 < u.size(); ++i) {
    const double r = r0 + double(i) * h;
    const cplx d2 = (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] +
                     16.0 * u[i - 1] - u[i - 2]) /
                    (12.0 * h * h);
    const cplx q = k2em - lam2 / (r * r);
    worst = std::max(worst, std::abs(d2 + q * u[i]));
    scale = std::max(scale, std::abs(d2) + std::abs(q * u[i]));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double radial_power(const TangentialState &w, double r) {
  return 0.5 * r * r *
         (w.e_theta * std::conj(w.h_phi) - w.e_phi * std::conj(w.h_theta))
             .real();
}

CVec4 mat_vec(const CMat4 &m, const CVec4 &v) {
  CVec4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out[i] += m[i][j] * v[j];
  return out;
}

CMat4 mat_mul(const CMat4 &a, const CMat4 &b) {
  CMat4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t q = 0; q < 4; ++q)
        out[i][j] += a[i][q] * b[q][j];
  return out;
}

} // namespace tw
