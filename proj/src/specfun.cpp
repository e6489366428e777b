#include "tw/specfun.hpp"

#include "tw/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace tw {

ModeIndex::ModeIndex(int l, int m) : l_(l), m_(m) {
  if (l < 0)
    throw ValidationError("mode requires l >= 0, got l = " + std::to_string(l));
  if (m > l || m < -l)
    throw ValidationError("mode requires |m| <= l, got l = " +
                          std::to_string(l) + ", m = " + std::to_string(m));
}

std::string_view to_string(RadialKind kind) {
  switch (kind) {
  case RadialKind::BesselJ:
    return "BesselJ";
  case RadialKind::BesselSecond:
    return "BesselSecond";
  case RadialKind::Hankel1:
    return "Hankel1";
  case RadialKind::Hankel2:
    return "Hankel2";
  }
  return "?";
}

RadialKind parse_radial_kind(std::string_view name) {
  for (auto k : {RadialKind::BesselJ, RadialKind::BesselSecond,
                 RadialKind::Hankel1, RadialKind::Hankel2})
    if (to_string(k) == name)
      return k;
  throw ValidationError("unknown radial kind '" + std::string(name) +
                        "' (expected BesselJ, BesselSecond, Hankel1 or Hankel2)");
}

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw ValidationError("theta must lie in [0, pi]");
}

// Unit-normalized associated Legendre function with Condon-Shortley phase,
// for m >= 0. With over_sin the result is divided by sin(theta) by dropping
// one factor of sin from the sectoral seed (requires m >= 1).
double normalized_legendre(int l, int m, double x, double s, bool over_sin) {
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int k = 1; k <= m; ++k) {
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    if (!(over_sin && k == 1))
      pmm *= s;
  }
  if (l == m)
    return pmm;

  double p_prev = pmm;
  double p_cur = x * std::sqrt(2.0 * m + 3.0) * pmm;
  for (int n = m + 2; n <= l; ++n) {
    const double nn = n;
    const double a = std::sqrt((4.0 * nn * nn - 1.0) / (nn * nn - double(m) * m));
    const double b = std::sqrt(((nn - 1.0) * (nn - 1.0) - double(m) * m) /
                               (4.0 * (nn - 1.0) * (nn - 1.0) - 1.0));
    const double p_next = a * (x * p_cur - b * p_prev);
    p_prev = p_cur;
    p_cur = p_next;
  }
  return p_cur;
}

cplx assemble(const ModeIndex &mode, double theta, double phi, bool over_sin) {
  const int am = std::abs(mode.m());
  const double p = normalized_legendre(mode.l(), am, std::cos(theta),
                                       std::sin(theta), over_sin);
  // Y_{l,-|m|} = (-1)^|m| conj(Y_{l,|m|})
  const double sign = (mode.m() < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
  return sign * p * std::polar(1.0, mode.m() * phi);
}

} // namespace

cplx ylm(const ModeIndex &mode, double theta, double phi) {
  check_theta(theta);
  return assemble(mode, theta, phi, false);
}

cplx ylm_over_sin(const ModeIndex &mode, double theta, double phi) {
  check_theta(theta);
  if (mode.m() == 0)
    return 0.0;
  return assemble(mode, theta, phi, true);
}

LadderStep ladder_plus(const ModeIndex &mode) {
  const int l = mode.l(), m = mode.m();
  if (m == l)
    return {};
  return {std::sqrt(double(l - m) * double(l + m + 1)), ModeIndex(l, m + 1)};
}

LadderStep ladder_minus(const ModeIndex &mode) {
  const int l = mode.l(), m = mode.m();
  if (m == -l)
    return {};
  return {std::sqrt(double(l + m) * double(l - m + 1)), ModeIndex(l, m - 1)};
}

cplx ylm_dtheta(const ModeIndex &mode, double theta, double phi) {
  check_theta(theta);
  cplx out = 0.0;
  if (auto up = ladder_plus(mode); up.shifted)
    out += std::polar(1.0, -phi) * up.coeff * ylm(*up.shifted, theta, phi);
  if (auto down = ladder_minus(mode); down.shifted)
    out -= std::polar(1.0, phi) * down.coeff * ylm(*down.shifted, theta, phi);
  return 0.5 * out;
}

// ---------------------------------------------------------------------------
// spherical Bessel / Hankel

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

cplx j0_closed(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

cplx j1_closed(cplx z) { return (std::sin(z) / z - std::cos(z)) / z; }

// j_{l-1}, j_l, j_{l+1} by downward (Miller) recurrence normalized against
// whichever of j_0 or j_1 is larger. Index -1 is not produced here.
struct Triple {
  cplx lm1, l, lp1;
};

Triple bessel_j_triple(int l, cplx z) {
  const int top = l + 1;
  const int start = top + 40 + static_cast<int>(std::ceil(std::abs(z)));

  cplx f_next = 0.0; // f_{n+1}
  cplx f_cur = 1.0;  // f_n, n = start
  Triple t{0.0, 0.0, 0.0};
  cplx f0 = 0.0, f1 = 0.0;

  auto record = [&](int n, cplx v) {
    if (n == l - 1)
      t.lm1 = v;
    if (n == l)
      t.l = v;
    if (n == l + 1)
      t.lp1 = v;
    if (n == 0)
      f0 = v;
    if (n == 1)
      f1 = v;
  };

  record(start, f_cur);
  for (int n = start; n >= 1; --n) {
    const cplx f_prev = (2.0 * n + 1.0) / z * f_cur - f_next;
    f_next = f_cur;
    f_cur = f_prev;
    record(n - 1, f_cur);
    if (std::abs(f_cur) > kRescaleAbove) {
      f_cur *= kRescaleBy;
      f_next *= kRescaleBy;
      t.lm1 *= kRescaleBy;
      t.l *= kRescaleBy;
      t.lp1 *= kRescaleBy;
      f0 *= kRescaleBy;
      f1 *= kRescaleBy;
    }
  }

  const cplx j0 = j0_closed(z);
  const cplx j1 = j1_closed(z);
  const cplx scale = (std::abs(j0) >= std::abs(j1) || std::abs(z) < 0.5)
                         ? j0 / f0
                         : j1 / f1;
  return {t.lm1 * scale, t.l * scale, t.lp1 * scale};
}

// Upward recurrence from closed-form orders -1 and 0; stable for the
// dominant solutions y, h1, h2.
template <class Seed>
std::pair<cplx, cplx> upward(int l, cplx z, Seed seed) {
  auto [fm1, f0] = seed(z);
  cplx prev = fm1, cur = f0;
  for (int n = 0; n < l; ++n) {
    const cplx next = (2.0 * n + 1.0) / z * cur - prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur}; // (f_{l-1}, f_l)
}

void ensure_finite(cplx v, const char *what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::overflow_error(std::string(what) +
                              " not representable for this order/argument");
}

} // namespace

RadialValue spherical_radial(RadialKind kind, int l, cplx x) {
  if (l < 0)
    throw ValidationError("spherical_radial requires l >= 0");
  if (x == cplx{0.0}) {
    if (kind != RadialKind::BesselJ)
      throw std::domain_error(std::string(to_string(kind)) +
                              " is singular at x = 0");
    const double v = (l == 0) ? 1.0 : 0.0;
    return {v, v};
  }

  cplx f_lm1 = 0.0, f_l = 0.0;
  switch (kind) {
  case RadialKind::BesselJ: {
    if (l == 0) {
      f_l = j0_closed(x);
      f_lm1 = std::cos(x) / x;
    } else {
      const auto t = bessel_j_triple(l, x);
      f_lm1 = t.lm1;
      f_l = t.l;
    }
    break;
  }
  case RadialKind::BesselSecond:
    std::tie(f_lm1, f_l) = upward(l, x, [](cplx z) {
      return std::pair{std::sin(z) / z, -std::cos(z) / z};
    });
    break;
  case RadialKind::Hankel1:
    std::tie(f_lm1, f_l) = upward(l, x, [](cplx z) {
      const cplx e = std::exp(I_unit * z);
      return std::pair{e / z, -I_unit * e / z};
    });
    break;
  case RadialKind::Hankel2:
    std::tie(f_lm1, f_l) = upward(l, x, [](cplx z) {
      const cplx e = std::exp(-I_unit * z);
      return std::pair{e / z, I_unit * e / z};
    });
    break;
  }

  // d(x f_l)/dx = x f_{l-1} - l f_l, with f_{-1} from the closed forms.
  const RadialValue out{f_l, x * f_lm1 - double(l) * f_l};
  ensure_finite(out.f, "spherical radial function");
  ensure_finite(out.d_xf, "spherical radial derivative");
  return out;
}

} // namespace tw
