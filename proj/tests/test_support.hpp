#pragma once

#include "tw/tensor3.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace testing {

inline double rel_err(tw::cplx got, tw::cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// |got - want| / max(|want|, floor): relative away from zero, absolute near it.
inline double mixed_err(tw::cplx got, tw::cplx want, double floor = 1.0) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

inline double tensor_diff(const tw::CTensor3 &a, const tw::CTensor3 &b) {
  return tw::max_abs(a - b);
}

inline tw::CTensor3 random_tensor(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  tw::CTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = {u(rng), u(rng)};
  return t;
}

inline tw::CVec3 random_vec(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
}

} // namespace testing
