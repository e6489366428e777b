#pragma once

// Maxwell curl residual computed in Cartesian coordinates. The field is
// queried in the local spherical frame, rotated to (x, y, z) with a frame
// built here from scratch, and differentiated with central differences
// along the Cartesian axes. Independent of the spherical-component stencil
// used by the library.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::array<cplx, 3>;

struct LocalField {
  Vec e, h; // components on (e_r, e_theta, e_phi)
};
using SphericalField = std::function<LocalField(double r, double theta, double phi)>;

struct CartesianField {
  Vec e, h;
};

inline CartesianField to_cartesian(const SphericalField &f, double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  const double theta = std::acos(z / r);
  double phi = std::atan2(y, x);
  if (phi < 0.0)
    phi += 2.0 * std::numbers::pi;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double er[3] = {st * cp, st * sp, ct};
  const double et[3] = {ct * cp, ct * sp, -st};
  const double ep[3] = {-sp, cp, 0.0};
  const LocalField v = f(r, theta, phi);
  CartesianField out;
  for (int i = 0; i < 3; ++i) {
    out.e[std::size_t(i)] = v.e[0] * er[i] + v.e[1] * et[i] + v.e[2] * ep[i];
    out.h[std::size_t(i)] = v.h[0] * er[i] + v.h[1] * et[i] + v.h[2] * ep[i];
  }
  return out;
}

struct CurlCheck {
  double faraday, ampere;
};

// Relative residuals |curl E - i k mu H| / |i k mu H| and
// |curl H + i k eps E| / |i k eps E| at the Cartesian point p.
inline CurlCheck curl_check(const SphericalField &f, double k, cplx eps, cplx mu,
                            std::array<double, 3> p, double h) {
  std::array<CartesianField, 6> s;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign = 0; sign < 2; ++sign) {
      auto q = p;
      q[std::size_t(axis)] += sign ? -h : h;
      s[std::size_t(2 * axis + sign)] = to_cartesian(f, q[0], q[1], q[2]);
    }
  auto d = [&](int axis, int comp, bool magnetic) {
    const auto &a = s[std::size_t(2 * axis)], &b = s[std::size_t(2 * axis + 1)];
    const Vec &va = magnetic ? a.h : a.e, &vb = magnetic ? b.h : b.e;
    return (va[std::size_t(comp)] - vb[std::size_t(comp)]) / (2.0 * h);
  };
  auto curl = [&](bool magnetic) {
    return Vec{d(1, 2, magnetic) - d(2, 1, magnetic), d(2, 0, magnetic) - d(0, 2, magnetic),
               d(0, 1, magnetic) - d(1, 0, magnetic)};
  };
  const CartesianField c = to_cartesian(f, p[0], p[1], p[2]);
  const cplx i{0.0, 1.0};
  auto rel = [](const Vec &a, const Vec &b) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      num += std::norm(a[j] - b[j]);
      den += std::norm(b[j]);
    }
    return std::sqrt(num / den);
  };
  const Vec ce = curl(false), ch = curl(true);
  Vec fe, fa;
  for (std::size_t j = 0; j < 3; ++j) {
    fe[j] = i * k * mu * c.h[j];
    fa[j] = -i * k * eps * c.e[j];
  }
  return {rel(ce, fe), rel(ch, fa)};
}

} // namespace oracle
