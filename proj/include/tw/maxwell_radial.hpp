#pragma once

// Radial side of the separated Maxwell equations
//
//   curl E = i k mu H,   curl H = -i k eps E   (time factor exp(-i w t))
//
// with E = F_lm E^l(r), H = F_lm H^l(r). The tangential state
// W = (H_theta, H_phi, E_theta, E_phi) obeys the first-order system
//
//   d(r W)/dr = i k M (r W),  M = [[0, eps A], [-mu A, 0]],
//   A = e_r^x - l(l+1)/(eps mu k^2 r^2) e_phi (x) e_theta,
//
// and the radial components follow algebraically:
//
//   E_r = -sqrt(l(l+1)) H_theta / (eps k r),
//   H_r =  sqrt(l(l+1)) E_theta / (mu k r).
//
// The two polarizations decouple: (H_theta, E_phi) carry the electric
// (TM) multipole, (E_theta, H_phi) the magnetic (TE) one.

#include "tw/ode.hpp"
#include "tw/specfun.hpp"
#include "tw/tensor3.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace tw {

using CMat4 = std::array<std::array<cplx, 4>, 4>;
/// 2x2 tensor on the tangential plane, indices 0 = theta, 1 = phi.
using Tangential2 = std::array<std::array<cplx, 2>, 2>;

/// Relative permittivity and permeability. Refractive index n = sqrt(eps mu)
/// on the branch Im(n) >= 0.
class Medium {
public:
  /// Throws ValidationError for zero or non-finite eps/mu.
  Medium(cplx eps, cplx mu);
  static Medium vacuum() { return {1.0, 1.0}; }

  cplx eps() const { return eps_; }
  cplx mu() const { return mu_; }
  cplx n() const;

  friend bool operator==(const Medium &, const Medium &) = default;

private:
  cplx eps_;
  cplx mu_;
};

/// Vacuum wavenumber k = omega / c.
class WaveNumber {
public:
  /// Throws ValidationError unless k > 0 and finite.
  explicit WaveNumber(double k);
  double value() const { return k_; }

private:
  double k_;
};

/// Concentric shells starting at r = 0; `outer` fills r > last r_outer.
/// A radius exactly on a boundary belongs to the inner shell.
class RadialProfile {
public:
  struct Shell {
    double r_outer;
    Medium medium;
  };

  /// Throws ValidationError unless the r_outer are positive and strictly
  /// increasing.
  RadialProfile(std::vector<Shell> shells, Medium outer);
  static RadialProfile homogeneous(Medium m) { return {{}, m}; }

  const std::vector<Shell> &shells() const { return shells_; }
  const Medium &outer() const { return outer_; }
  const Medium &medium_at(double r) const;

private:
  std::vector<Shell> shells_;
  Medium outer_;
};

/// Tangential field components at one radius.
struct TangentialState {
  cplx h_theta = 0.0, h_phi = 0.0, e_theta = 0.0, e_phi = 0.0;

  CVec4 as_array() const { return {h_theta, h_phi, e_theta, e_phi}; }
  static TangentialState from_array(const CVec4 &v) {
    return {v[0], v[1], v[2], v[3]};
  }
  CVec3 h_t() const { return {0.0, h_theta, h_phi}; }
  CVec3 e_t() const { return {0.0, e_theta, e_phi}; }
};

/// Complex 2-vector on (e_theta, e_phi).
struct Coeff2 {
  cplx theta = 0.0;
  cplx phi = 0.0;
};

/// First-order system matrix M with d(rW)/dr = i k M (rW), acting on
/// (H_theta, H_phi, E_theta, E_phi). Requires l >= 1, r > 0.
CMat4 system_matrix(int l, WaveNumber k, double r, const Medium &med);

/// Closed-form homogeneous-medium blocks
///   eta_j  = f_j e_th(x)e_th - i/(mu k r) d(r f_j)/dr e_ph(x)e_ph
///   zeta_j = f_j e_th(x)e_ph + i/(eps k r) d(r f_j)/dr e_ph(x)e_th
/// with f_j the spherical function of kind_j at n k r. Then
///   H_t = eta_1 c_1 + eta_2 c_2,  E_t = zeta_1 c_1 + zeta_2 c_2.
struct EtaZeta {
  Tangential2 eta1, eta2, zeta1, zeta2;
};
EtaZeta homogeneous_eta_zeta(int l, RadialKind kind1, RadialKind kind2,
                             WaveNumber k, double r, const Medium &med);

TangentialState assemble_state(const EtaZeta &ez, const Coeff2 &c1,
                               const Coeff2 &c2);

/// (H_phi, E_phi) from the theta projections:
///   W_phi = i/(k r eps mu) [[0, -eps], [mu, 0]] d(r W_theta)/dr
/// with W_theta = (H_theta, E_theta).
std::pair<cplx, cplx> wphi_from_wtheta(int l, WaveNumber k, double r,
                                       const Medium &med,
                                       std::pair<cplx, cplx> d_r_wtheta);

struct Longitudinal {
  cplx e_r;
  cplx h_r;
};
Longitudinal longitudinal_components(int l, WaveNumber k, double r,
                                     const Medium &med,
                                     const TangentialState &w);

/// Full frame-local field vectors E^l, H^l.
struct RadialFields {
  CVec3 e;
  CVec3 h;
};
RadialFields full_fields(int l, WaveNumber k, double r, const Medium &med,
                         const TangentialState &w);

/// 4x4 matrix S(r) with W(r) = S(r) (c1_theta, c1_phi, c2_theta, c2_phi).
CMat4 solution_matrix(int l, RadialKind kind1, RadialKind kind2, WaveNumber k,
                      double r, const Medium &med);

/// Inverts S(r) polarization by polarization. Throws NumericalError if the
/// pair of kinds is degenerate at r.
std::pair<Coeff2, Coeff2> coefficients_from_state(int l, RadialKind kind1,
                                                  RadialKind kind2,
                                                  WaveNumber k, double r,
                                                  const Medium &med,
                                                  const TangentialState &w);

/// W(r1) = T W(r0) inside one homogeneous medium, built as
/// S(r1) S(r0)^{-1} from the (BesselJ, BesselSecond) closed forms.
CMat4 closed_form_transfer(int l, WaveNumber k, const Medium &med, double r0,
                           double r1);

/// Numerically integrated transfer matrix, W(r_to) = T W(r_from). All four
/// basis states share one adaptive step sequence, so propagate() is linear in
/// the initial state to rounding. The profile version splits at shell
/// boundaries where W is carried over unchanged.
using MediumFunction = std::function<Medium(double)>;
CMat4 numerical_transfer(int l, WaveNumber k, const RadialProfile &profile,
                         double r_from, double r_to, const OdeOptions &opts = {});
CMat4 numerical_transfer(int l, WaveNumber k, const MediumFunction &medium,
                         double r_from, double r_to, const OdeOptions &opts = {});

/// Numerical solution of the tangential system from r_from to r_to
/// (either direction).
TangentialState propagate(int l, WaveNumber k, const RadialProfile &profile,
                          double r_from, double r_to,
                          const TangentialState &w_init,
                          const OdeOptions &opts = {});

/// Same for a smoothly varying medium given as a callable of r.
TangentialState propagate(int l, WaveNumber k, const MediumFunction &medium,
                          double r_from, double r_to,
                          const TangentialState &w_init,
                          const OdeOptions &opts = {});

/// Relative residual of (r f)'' + (k^2 eps mu - l(l+1)/r^2)(r f) = 0 for
/// samples f_i at r_i = r0 + i h, using the five-point second derivative.
/// Throws ValidationError when fewer than 5 samples are given or the grid
/// does not resolve the local wavelength (h * max(|n| k, sqrt(l(l+1))/r) > 0.1).
double wtheta_ode_residual(int l, WaveNumber k, const Medium &med, double r0,
                           double h, std::span<const cplx> samples);

/// Time-averaged power through the sphere of radius r carried by one
/// partial wave: 1/2 Re r^2 (E_theta H_phi* - E_phi H_theta*).
double radial_power(const TangentialState &w, double r);

CVec4 mat_vec(const CMat4 &m, const CVec4 &v);
CMat4 mat_mul(const CMat4 &a, const CMat4 &b);

} // namespace tw
