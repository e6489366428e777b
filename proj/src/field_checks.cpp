#include "tw/field_checks.hpp"

#include "tw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tw {

namespace {

struct Stencil {
  FieldValue r_plus, r_minus, t_plus, t_minus, p_plus, p_minus;
  double hr, ht, hp;
};

Stencil sample_stencil(const PointField &field, const SphericalPosition &at,
                       double h_rel) {
  const double hr = h_rel * at.r, ha = h_rel;
  if (at.theta - ha <= 0.0 || at.theta + ha >= std::numbers::pi)
    throw ValidationError("finite-difference stencil crosses a pole");
  auto f = [&](double dr, double dt, double dp) {
    return field({at.r + dr, at.theta + dt, at.phi + dp});
  };
  return {f(hr, 0, 0), f(-hr, 0, 0), f(0, ha, 0), f(0, -ha, 0),
          f(0, 0, ha), f(0, 0, -ha), hr, ha, ha};
}

CVec3 fd_curl(const Stencil &s, const SphericalPosition &at,
              CVec3 FieldValue::*comp) {
  const double r = at.r, st = std::sin(at.theta);
  const double stp = std::sin(at.theta + s.ht), stm = std::sin(at.theta - s.ht);
  const CVec3 &rp = s.r_plus.*comp, &rm = s.r_minus.*comp;
  const CVec3 &tp = s.t_plus.*comp, &tm = s.t_minus.*comp;
  const CVec3 &pp = s.p_plus.*comp, &pm = s.p_minus.*comp;

  const cplx d_t_sin_vphi = (stp * tp[Phi] - stm * tm[Phi]) / (2.0 * s.ht);
  const cplx d_p_vtheta = (pp[Theta] - pm[Theta]) / (2.0 * s.hp);
  const cplx d_p_vr = (pp[R] - pm[R]) / (2.0 * s.hp);
  const cplx d_r_r_vphi =
      ((r + s.hr) * rp[Phi] - (r - s.hr) * rm[Phi]) / (2.0 * s.hr);
  const cplx d_r_r_vtheta =
      ((r + s.hr) * rp[Theta] - (r - s.hr) * rm[Theta]) / (2.0 * s.hr);
  const cplx d_t_vr = (tp[R] - tm[R]) / (2.0 * s.ht);

  return {(d_t_sin_vphi - d_p_vtheta) / (r * st),
          (d_p_vr / st - d_r_r_vphi) / r, (d_r_r_vtheta - d_t_vr) / r};
}

double relative(const CVec3 &lhs, const CVec3 &rhs) {
  const double scale = std::max({norm(lhs), norm(rhs), 1e-300});
  return norm(lhs - rhs) / scale;
}

} // namespace

CurlResidual maxwell_curl_residual(const PointField &field, WaveNumber k,
                                   const Medium &med,
                                   const SphericalPosition &at, double h_rel) {
  const Stencil s = sample_stencil(field, at, h_rel);
  const FieldValue c = field(at);
  const CVec3 curl_e = fd_curl(s, at, &FieldValue::e);
  const CVec3 curl_h = fd_curl(s, at, &FieldValue::h);
  const double kv = k.value();
  return {relative(curl_e, I_unit * kv * med.mu() * c.h),
          relative(curl_h, -I_unit * kv * med.eps() * c.e)};
}

double divergence_residual(const PointField &field, const Medium &med,
                           const SphericalPosition &at, double h_rel) {
  const Stencil s = sample_stencil(field, at, h_rel);
  const double r = at.r, st = std::sin(at.theta);
  const double stp = std::sin(at.theta + s.ht), stm = std::sin(at.theta - s.ht);
  const double rp = r + s.hr, rm = r - s.hr;
  const cplx d_r = (rp * rp * s.r_plus.e[R] - rm * rm * s.r_minus.e[R]) /
                   (2.0 * s.hr * r * r);
  const cplx d_t = (stp * s.t_plus.e[Theta] - stm * s.t_minus.e[Theta]) /
                   (2.0 * s.ht * r * st);
  const cplx d_p = (s.p_plus.e[Phi] - s.p_minus.e[Phi]) / (2.0 * s.hp * r * st);
  const double scale = std::max(norm(field(at).e) / r, 1e-300);
  return std::abs(med.eps() * (d_r + d_t + d_p)) / (std::abs(med.eps()) * scale);
}

PointField expansion_field(std::vector<PartialWave> waves, WaveNumber k,
                           Medium med) {
  return [waves = std::move(waves), k, med](const SphericalPosition &pos) {
    const auto s = synthesize(waves, k, med, {pos});
    return FieldValue{s.front().e, s.front().h};
  };
}

} // namespace tw
