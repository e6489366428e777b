#include "test_support.hpp"

#include <doctest.h>

using namespace tw;
using testing::random_tensor;
using testing::random_vec;
using testing::tensor_diff;

TEST_CASE("frame is right-handed") {
  const CVec3 c = cross(CVec3::e_r(), CVec3::e_theta());
  CHECK(norm(c - CVec3::e_phi()) == 0.0);
  CHECK(norm(cross(CVec3::e_theta(), CVec3::e_phi()) - CVec3::e_r()) == 0.0);
  CHECK(norm(cross(CVec3::e_phi(), CVec3::e_r()) - CVec3::e_theta()) == 0.0);
}

TEST_CASE("dot is bilinear, hdot conjugates the left factor") {
  const CVec3 a{I_unit, 0.0, 0.0};
  CHECK(dot(a, a) == cplx{-1.0, 0.0});
  CHECK(hdot(a, a) == cplx{1.0, 0.0});
}

TEST_CASE("dual tensor realizes the cross product from both sides") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CVec3 v = random_vec(rng), a = random_vec(rng);
    CHECK(norm(dual(v) * a - cross(v, a)) < 1e-15);
    CHECK(norm(a * dual(v) - cross(a, v)) < 1e-15);
    CHECK(tensor_diff(transpose(dual(v)), -1.0 * dual(v)) == 0.0);
  }
}

TEST_CASE("dyad and tangential projector") {
  const CVec3 u{1.0, 2.0, I_unit}, v{0.5, -1.0, 3.0};
  const CTensor3 d = dyad(u, v);
  CHECK(d(2, 0) == I_unit * 0.5);
  CHECK(d(1, 2) == cplx{6.0});
  const CTensor3 p = tangential_projector();
  CHECK(tensor_diff(p + dyad(CVec3::e_r(), CVec3::e_r()), CTensor3::identity()) == 0.0);
  CHECK(tensor_diff(p * p, p) == 0.0);
}

TEST_CASE("determinant and trace of simple tensors") {
  CHECK(det(CTensor3::identity()) == cplx{1.0});
  CHECK(det(CTensor3::diagonal(2.0, I_unit, 3.0)) == 6.0 * I_unit);
  CHECK(trace(CTensor3::diagonal(2.0, I_unit, 3.0)) == cplx{5.0, 1.0});
  // dual tensors are singular
  CHECK(std::abs(det(dual({1.0, 2.0, 3.0}))) == 0.0);
}

TEST_CASE("adjugate satisfies adj(T) T = T adj(T) = det(T) 1") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const CTensor3 t = random_tensor(rng);
    const CTensor3 target = det(t) * CTensor3::identity();
    CHECK(tensor_diff(adjoint(t) * t, target) < 1e-14);
    CHECK(tensor_diff(t * adjoint(t), target) < 1e-14);
  }
}

TEST_CASE("det is multiplicative and matches the Leibniz formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const CTensor3 a = random_tensor(rng), b = random_tensor(rng);
    CHECK(std::abs(det(a * b) - det(a) * det(b)) < 1e-13);
    const cplx leibniz = a(0, 0) * a(1, 1) * a(2, 2) + a(0, 1) * a(1, 2) * a(2, 0) +
                         a(0, 2) * a(1, 0) * a(2, 1) - a(0, 2) * a(1, 1) * a(2, 0) -
                         a(0, 1) * a(1, 0) * a(2, 2) - a(0, 0) * a(1, 2) * a(2, 1);
    CHECK(std::abs(det(a) - leibniz) < 1e-14);
  }
}

TEST_CASE("trace of the adjugate equals the second invariant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const CTensor3 t = random_tensor(rng);
    const cplx tr = trace(t);
    const cplx i2 = 0.5 * (tr * tr - trace(t * t));
    CHECK(std::abs(trace(adjoint(t)) - i2) < 1e-14);
  }
}

TEST_CASE("hermitian transpose conjugates and swaps") {
  CTensor3 t;
  t(0, 1) = {1.0, 2.0};
  const CTensor3 h = hermitian(t);
  CHECK(h(1, 0) == cplx{1.0, -2.0});
  CHECK(h(0, 1) == cplx{0.0});
}

TEST_CASE("row and column actions agree through the transpose") {
  std::mt19937_64 rng(21);
  const CTensor3 t = random_tensor(rng);
  const CVec3 a = random_vec(rng);
  CHECK(norm(a * t - transpose(t) * a) < 1e-15);
}

TEST_CASE("non-finite detection") {
  CVec3 v;
  CHECK(v.is_finite());
  v[1] = {std::nan(""), 0.0};
  CHECK_FALSE(v.is_finite());
  CTensor3 t;
  t(2, 2) = {0.0, INFINITY};
  CHECK_FALSE(t.is_finite());
}
