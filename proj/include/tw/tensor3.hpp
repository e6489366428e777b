#pragma once

// Complex 3-vectors and 3x3 tensors over the local spherical frame
// (e_r, e_theta, e_phi). Index 0 is r, 1 is theta, 2 is phi. The frame is
// right-handed: e_r x e_theta = e_phi.

#include <array>
#include <complex>

namespace tw {

using cplx = std::complex<double>;

inline constexpr cplx I_unit{0.0, 1.0};

enum Axis : int { R = 0, Theta = 1, Phi = 2 };

class CVec3 {
public:
  constexpr CVec3() = default;
  constexpr CVec3(cplx r, cplx theta, cplx phi) : v_{r, theta, phi} {}

  static constexpr CVec3 e_r() { return {1.0, 0.0, 0.0}; }
  static constexpr CVec3 e_theta() { return {0.0, 1.0, 0.0}; }
  static constexpr CVec3 e_phi() { return {0.0, 0.0, 1.0}; }

  constexpr cplx &operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  constexpr const cplx &operator[](int i) const {
    return v_[static_cast<std::size_t>(i)];
  }

  cplx r() const { return v_[0]; }
  cplx theta() const { return v_[1]; }
  cplx phi() const { return v_[2]; }

  CVec3 &operator+=(const CVec3 &o);
  CVec3 &operator-=(const CVec3 &o);
  CVec3 &operator*=(cplx s);

  bool is_finite() const;

private:
  std::array<cplx, 3> v_{};
};

CVec3 operator+(CVec3 a, const CVec3 &b);
CVec3 operator-(CVec3 a, const CVec3 &b);
CVec3 operator-(const CVec3 &a);
CVec3 operator*(cplx s, CVec3 a);
CVec3 operator*(CVec3 a, cplx s);

/// Bilinear product sum_i a_i b_i (no conjugation).
cplx dot(const CVec3 &a, const CVec3 &b);
/// Hermitian product sum_i conj(a_i) b_i.
cplx hdot(const CVec3 &a, const CVec3 &b);
CVec3 cross(const CVec3 &a, const CVec3 &b);
CVec3 conj(const CVec3 &a);
/// Euclidean norm sqrt(sum |a_i|^2).
double norm(const CVec3 &a);

class CTensor3 {
public:
  constexpr CTensor3() = default;

  static CTensor3 identity();
  static CTensor3 diagonal(cplx a, cplx b, cplx c);

  cplx &operator()(int i, int j) {
    return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const cplx &operator()(int i, int j) const {
    return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  CTensor3 &operator+=(const CTensor3 &o);
  CTensor3 &operator-=(const CTensor3 &o);
  CTensor3 &operator*=(cplx s);

  bool is_finite() const;

private:
  std::array<std::array<cplx, 3>, 3> m_{};
};

CTensor3 operator+(CTensor3 a, const CTensor3 &b);
CTensor3 operator-(CTensor3 a, const CTensor3 &b);
CTensor3 operator*(cplx s, CTensor3 a);
CTensor3 operator*(CTensor3 a, cplx s);
CTensor3 operator*(const CTensor3 &a, const CTensor3 &b);
CVec3 operator*(const CTensor3 &t, const CVec3 &v);
/// Row-vector action a.T, i.e. (a.T)_j = sum_i a_i T_ij.
CVec3 operator*(const CVec3 &a, const CTensor3 &t);

/// (u (x) v)_ij = u_i v_j.
CTensor3 dyad(const CVec3 &u, const CVec3 &v);
/// Antisymmetric tensor with dual(v).a = v x a and a.dual(v) = a x v.
CTensor3 dual(const CVec3 &v);
/// Projector onto the (theta, phi) plane, 1 - e_r (x) e_r.
CTensor3 tangential_projector();

CTensor3 transpose(const CTensor3 &t);
/// Conjugate transpose.
CTensor3 hermitian(const CTensor3 &t);

cplx trace(const CTensor3 &t);
/// Cofactor expansion along the first row.
cplx det(const CTensor3 &t);
/// Adjugate (transposed cofactor matrix): adjoint(T).T = T.adjoint(T) = det(T) 1.
CTensor3 adjoint(const CTensor3 &t);

/// Largest entry modulus.
double max_abs(const CTensor3 &t);
double frobenius(const CTensor3 &t);

} // namespace tw
