#pragma once

// Vector spherical harmonics X_lm = L Y_lm / sqrt(l(l+1)), the rank-2
// electrodynamic harmonic
//
//   F_lm = Y_lm e_r (x) e_r + X_lm (x) e_theta + (e_r x X_lm) (x) e_phi
//
// and its generalization G_lm with an arbitrary orthonormal right-hand
// basis. Tensors are stored row = left (field-space) factor, column = right
// factor, so a field is synthesized as F_lm * E^l.
//
// For l = 0 the normalization sqrt(l(l+1)) vanishes; X_00 is defined as the
// zero vector and F_00 = Y_00 e_r (x) e_r.

#include "tw/quadrature.hpp"
#include "tw/specfun.hpp"
#include "tw/tensor3.hpp"

#include <functional>
#include <vector>

namespace tw {

/// Orthonormal (under the Hermitian product) triple of vectors.
class OrthoBasis {
public:
  /// Throws ValidationError if |a|,|b|,|c| differ from 1 or any pair is not
  /// orthogonal, to 1e-14.
  OrthoBasis(const CVec3 &a, const CVec3 &b, const CVec3 &c);

  /// (e_r, e_theta, e_phi): G_lm reduces to F_lm.
  static OrthoBasis spherical();

  const CVec3 &a() const { return a_; }
  const CVec3 &b() const { return b_; }
  const CVec3 &c() const { return c_; }

private:
  CVec3 a_, b_, c_;
};

CVec3 xlm(const ModeIndex &mode, const AngularPoint &p);

/// F_lm assembled from its three dyads.
CTensor3 flm(const ModeIndex &mode, const AngularPoint &p);

/// F_lm from the operator form
///   [e_r(x)e_r - (I L_z + e_r^x (i sin/2)(e^{-i phi} L+ - e^{i phi} L-))
///    / (sin(theta) sqrt(l(l+1)))] Y_lm
/// built from the projector I and dual tensor e_r^x. Independent assembly
/// path used to cross-check flm().
CTensor3 flm_explicit(const ModeIndex &mode, const AngularPoint &p);

CTensor3 glm(const ModeIndex &mode, const AngularPoint &p,
             const OrthoBasis &basis);

/// Angular Gram tensor of two tensor fields: integral of A^+ B over the
/// sphere, frame vectors held constant.
using TensorField = std::function<CTensor3(const AngularPoint &)>;
CTensor3 gram(const TensorField &a, const TensorField &b,
              const QuadratureRule &rule);

/// Integral of F_A^+ F_B. The result on `rule` is compared against the
/// refined rule; NumericalError if they differ by more than 1e-12.
CTensor3 ortho_matrix(const ModeIndex &a, const ModeIndex &b,
                      const QuadratureRule &rule);
/// Starts at QuadratureRule::for_degree(max l) and refines until two
/// successive results agree to 1e-12.
CTensor3 ortho_matrix(const ModeIndex &a, const ModeIndex &b);

/// Scalar overlap of Y_a* Y_b.
cplx scalar_overlap(const ModeIndex &a, const ModeIndex &b,
                    const QuadratureRule &rule);
/// Overlap of X_a* . X_b.
cplx vector_overlap(const ModeIndex &a, const ModeIndex &b,
                    const QuadratureRule &rule);
/// Overlap of e_r . (X_a* x X_b).
cplx cross_overlap(const ModeIndex &a, const ModeIndex &b,
                   const QuadratureRule &rule);

/// All pairwise overlaps of a mode list on one rule, row-major with index
/// a * size + b. Each harmonic is sampled once per node, so this is the
/// cheap way to sweep many modes.
struct OverlapTable {
  std::size_t size = 0;
  std::vector<CTensor3> gram; // integral of F_a^+ F_b
  std::vector<cplx> scalar;   // Y_a* Y_b
  std::vector<cplx> vector;   // X_a* . X_b
  std::vector<cplx> cross;    // e_r . (X_a* x X_b)
};
OverlapTable overlap_table(const std::vector<ModeIndex> &modes,
                           const QuadratureRule &rule);

// Angular-momentum identities, evaluated through the ladder operators
// rather than by differentiation of numerical values.

/// |L^2 Y_lm - l(l+1) Y_lm| with L^2 = L_z^2 + (L+L- + L-L+)/2.
double l_squared_check(const ModeIndex &mode, const AngularPoint &p);
/// |L_z Y_lm - m Y_lm| with L_z = (L+L- - L-L+)/2.
double lz_check(const ModeIndex &mode, const AngularPoint &p);
/// L . X_lm, using the Cartesian ladder form of L Y_lm.
cplx l_dot_xlm(const ModeIndex &mode, const AngularPoint &p);
/// L . (e_r x X_lm) = -(i/sin) [d_theta(sin V_phi) - d_phi V_theta]. Not
/// defined at the poles.
cplx l_dot_er_cross_xlm(const ModeIndex &mode, const AngularPoint &p);

/// L Y_lm / sqrt(l(l+1)) in Cartesian components (x, y, z), from
/// L_x = (L+ + L-)/2, L_y = (L+ - L-)/(2i).
std::array<cplx, 3> xlm_cartesian(const ModeIndex &mode, const AngularPoint &p);

/// Columns are e_r, e_theta, e_phi in Cartesian components.
std::array<std::array<double, 3>, 3> frame_to_cartesian(const AngularPoint &p);

} // namespace tw
