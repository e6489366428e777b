#pragma once

// Adaptive Dormand-Prince 5(4) integrator for complex linear/nonlinear
// systems y' = f(t, y) with a fixed-size state.

#include "tw/tensor3.hpp"

#include <array>
#include <functional>

namespace tw {

template <std::size_t N> using CVecN = std::array<cplx, N>;
using CVec4 = CVecN<4>;
using CVec16 = CVecN<16>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0; // 0: chosen from the interval length
  long max_steps = 1'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

template <std::size_t N>
using OdeRhsN = std::function<CVecN<N>(double, const CVecN<N> &)>;
using OdeRhs = OdeRhsN<4>;

/// Integrates from t0 to t1 (either direction). Throws NumericalError on
/// step-size underflow, non-finite state or exceeding max_steps.
/// Instantiated for N = 4 and N = 16.
template <std::size_t N>
CVecN<N> integrate_dopri5(const OdeRhsN<N> &rhs, double t0, double t1,
                          CVecN<N> y, const OdeOptions &opts = {},
                          OdeStats *stats = nullptr);

inline CVec4 integrate_dopri5(const OdeRhs &rhs, double t0, double t1, CVec4 y,
                              const OdeOptions &opts = {},
                              OdeStats *stats = nullptr) {
  return integrate_dopri5<4>(rhs, t0, t1, y, opts, stats);
}

} // namespace tw
