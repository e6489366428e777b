#include "tw/tensor3.hpp"

#include <algorithm>
#include <cmath>

namespace tw {

namespace {
bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
} // namespace

CVec3 &CVec3::operator+=(const CVec3 &o) {
  for (int i = 0; i < 3; ++i)
    (*this)[i] += o[i];
  return *this;
}

CVec3 &CVec3::operator-=(const CVec3 &o) {
  for (int i = 0; i < 3; ++i)
    (*this)[i] -= o[i];
  return *this;
}

CVec3 &CVec3::operator*=(cplx s) {
  for (auto &c : v_)
    c *= s;
  return *this;
}

bool CVec3::is_finite() const {
  return std::all_of(v_.begin(), v_.end(), finite);
}

CVec3 operator+(CVec3 a, const CVec3 &b) { return a += b; }
CVec3 operator-(CVec3 a, const CVec3 &b) { return a -= b; }
CVec3 operator-(const CVec3 &a) { return cplx{-1.0} * a; }
CVec3 operator*(cplx s, CVec3 a) { return a *= s; }
CVec3 operator*(CVec3 a, cplx s) { return a *= s; }

cplx dot(const CVec3 &a, const CVec3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

cplx hdot(const CVec3 &a, const CVec3 &b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] +
         std::conj(a[2]) * b[2];
}

CVec3 cross(const CVec3 &a, const CVec3 &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

CVec3 conj(const CVec3 &a) {
  return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}

double norm(const CVec3 &a) { return std::sqrt(hdot(a, a).real()); }

CTensor3 CTensor3::identity() { return diagonal(1.0, 1.0, 1.0); }

CTensor3 CTensor3::diagonal(cplx a, cplx b, cplx c) {
  CTensor3 t;
  t(0, 0) = a;
  t(1, 1) = b;
  t(2, 2) = c;
  return t;
}

CTensor3 &CTensor3::operator+=(const CTensor3 &o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      (*this)(i, j) += o(i, j);
  return *this;
}

CTensor3 &CTensor3::operator-=(const CTensor3 &o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      (*this)(i, j) -= o(i, j);
  return *this;
}

CTensor3 &CTensor3::operator*=(cplx s) {
  for (auto &row : m_)
    for (auto &c : row)
      c *= s;
  return *this;
}

bool CTensor3::is_finite() const {
  return std::all_of(m_.begin(), m_.end(), [](const auto &row) {
    return std::all_of(row.begin(), row.end(), finite);
  });
}

CTensor3 operator+(CTensor3 a, const CTensor3 &b) { return a += b; }
CTensor3 operator-(CTensor3 a, const CTensor3 &b) { return a -= b; }
CTensor3 operator*(cplx s, CTensor3 a) { return a *= s; }
CTensor3 operator*(CTensor3 a, cplx s) { return a *= s; }

CTensor3 operator*(const CTensor3 &a, const CTensor3 &b) {
  CTensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

CVec3 operator*(const CTensor3 &t, const CVec3 &v) {
  CVec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = t(i, 0) * v[0] + t(i, 1) * v[1] + t(i, 2) * v[2];
  return out;
}

CVec3 operator*(const CVec3 &a, const CTensor3 &t) {
  CVec3 out;
  for (int j = 0; j < 3; ++j)
    out[j] = a[0] * t(0, j) + a[1] * t(1, j) + a[2] * t(2, j);
  return out;
}

CTensor3 dyad(const CVec3 &u, const CVec3 &v) {
  CTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = u[i] * v[j];
  return t;
}

CTensor3 dual(const CVec3 &v) {
  CTensor3 t;
  t(0, 1) = -v[2];
  t(0, 2) = v[1];
  t(1, 0) = v[2];
  t(1, 2) = -v[0];
  t(2, 0) = -v[1];
  t(2, 1) = v[0];
  return t;
}

CTensor3 tangential_projector() { return CTensor3::diagonal(0.0, 1.0, 1.0); }

CTensor3 transpose(const CTensor3 &t) {
  CTensor3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out(i, j) = t(j, i);
  return out;
}

CTensor3 hermitian(const CTensor3 &t) {
  CTensor3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out(i, j) = std::conj(t(j, i));
  return out;
}

cplx trace(const CTensor3 &t) { return t(0, 0) + t(1, 1) + t(2, 2); }

cplx det(const CTensor3 &t) {
  return t(0, 0) * (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) -
         t(0, 1) * (t(1, 0) * t(2, 2) - t(1, 2) * t(2, 0)) +
         t(0, 2) * (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0));
}

CTensor3 adjoint(const CTensor3 &t) {
  // adj_ij = cofactor_ji
  CTensor3 a;
  a(0, 0) = t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1);
  a(0, 1) = t(0, 2) * t(2, 1) - t(0, 1) * t(2, 2);
  a(0, 2) = t(0, 1) * t(1, 2) - t(0, 2) * t(1, 1);
  a(1, 0) = t(1, 2) * t(2, 0) - t(1, 0) * t(2, 2);
  a(1, 1) = t(0, 0) * t(2, 2) - t(0, 2) * t(2, 0);
  a(1, 2) = t(0, 2) * t(1, 0) - t(0, 0) * t(1, 2);
  a(2, 0) = t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0);
  a(2, 1) = t(0, 1) * t(2, 0) - t(0, 0) * t(2, 1);
  a(2, 2) = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
  return a;
}

double max_abs(const CTensor3 &t) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m = std::max(m, std::abs(t(i, j)));
  return m;
}

double frobenius(const CTensor3 &t) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += std::norm(t(i, j));
  return std::sqrt(s);
}

} // namespace tw
