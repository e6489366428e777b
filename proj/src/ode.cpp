#include "tw/ode.hpp"

#include "tw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tw {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
CVecN<N> axpy(const CVecN<N> &y, double h,
              std::initializer_list<std::pair<double, const CVecN<N> *>> terms) {
  CVecN<N> out = y;
  for (auto [coef, k] : terms) {
    if (coef == 0.0)
      continue;
    for (std::size_t i = 0; i < N; ++i)
      out[i] += h * coef * (*k)[i];
  }
  return out;
}

template <std::size_t N> bool finite(const CVecN<N> &y) {
  return std::all_of(y.begin(), y.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

} // namespace

template <std::size_t N>
CVecN<N> integrate_dopri5(const OdeRhsN<N> &rhs, double t0, double t1,
                          CVecN<N> y, const OdeOptions &opts, OdeStats *stats) {
  using V = CVecN<N>;
  if (t0 == t1)
    return y;
  const double span = t1 - t0;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = opts.initial_step > 0 ? opts.initial_step : std::abs(span) / 100.0;
  h = std::min(h, std::abs(span));
  double t = t0;
  V k1 = rhs(t, y);
  OdeStats local;

  while (dir * (t1 - t) > 0.0) {
    if (local.accepted + local.rejected >= opts.max_steps)
      throw NumericalError("integrator exceeded max_steps");
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h < 1e-14 * std::max(std::abs(t), std::abs(span)))
      throw NumericalError("integrator step size underflow at t = " +
                           std::to_string(t));
    const double hs = dir * h;

    const V k2 = rhs(t + c2 * hs, axpy<N>(y, hs, {{a21, &k1}}));
    const V k3 = rhs(t + c3 * hs, axpy<N>(y, hs, {{a31, &k1}, {a32, &k2}}));
    const V k4 =
        rhs(t + c4 * hs, axpy<N>(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const V k5 = rhs(t + c5 * hs, axpy<N>(y, hs,
                                           {{a51, &k1}, {a52, &k2}, {a53, &k3},
                                            {a54, &k4}}));
    const V k6 = rhs(t + hs, axpy<N>(y, hs,
                                      {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                       {a64, &k4}, {a65, &k5}}));
    const V y_new = axpy<N>(
        y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double t_new = last ? t1 : t + hs;
    const V k7 = rhs(t_new, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const cplx e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                           e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err) || !finite<N>(y_new))
      throw NumericalError("integrator produced a non-finite state");

    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      ++local.accepted;
      h *= factor;
    } else {
      ++local.rejected;
      h *= std::min(factor, 1.0);
    }
  }
  if (stats)
    *stats = local;
  return y;
}

template CVec4 integrate_dopri5<4>(const OdeRhsN<4> &, double, double, CVec4,
                                   const OdeOptions &, OdeStats *);
template CVec16 integrate_dopri5<16>(const OdeRhsN<16> &, double, double,
                                     CVec16, const OdeOptions &, OdeStats *);

} // namespace tw
