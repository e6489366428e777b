#pragma once

// Scalar spherical harmonics (Condon-Shortley phase, unit norm on the
// sphere), angular-momentum ladder coefficients and spherical
// Bessel/Hankel functions of complex argument.

#include "tw/tensor3.hpp"

#include <optional>
#include <string_view>

namespace tw {

/// Mode label (l, m) with l >= 0 and |m| <= l.
class ModeIndex {
public:
  /// Throws ValidationError unless l >= 0 and |m| <= l.
  ModeIndex(int l, int m);

  int l() const { return l_; }
  int m() const { return m_; }

  friend bool operator==(const ModeIndex &, const ModeIndex &) = default;
  friend auto operator<=>(const ModeIndex &, const ModeIndex &) = default;

private:
  int l_;
  int m_;
};

enum class RadialKind { BesselJ, BesselSecond, Hankel1, Hankel2 };

std::string_view to_string(RadialKind kind);
/// Accepts the enumerator names ("BesselJ", ...). Throws ValidationError.
RadialKind parse_radial_kind(std::string_view name);

/// Y_lm(theta, phi). Requires 0 <= theta <= pi.
cplx ylm(const ModeIndex &mode, double theta, double phi);

/// Y_lm / sin(theta) for m != 0, evaluated without division so it stays
/// finite at the poles (only m = +-1 survive there). Returns 0 for m = 0.
cplx ylm_over_sin(const ModeIndex &mode, double theta, double phi);

/// Result of applying L+ or L- to Y_lm: coeff * Y_{shifted}. At the top
/// (bottom) of the ladder coeff is 0 and shifted is empty.
struct LadderStep {
  double coeff = 0.0;
  std::optional<ModeIndex> shifted;
};

/// L+ Y_lm = sqrt((l-m)(l+m+1)) Y_{l,m+1}.
LadderStep ladder_plus(const ModeIndex &mode);
/// L- Y_lm = sqrt((l+m)(l-m+1)) Y_{l,m-1}.
LadderStep ladder_minus(const ModeIndex &mode);

/// dY_lm/dtheta from the ladder identity
/// d/dtheta = (exp(-i phi) L+ - exp(i phi) L-) / 2.
cplx ylm_dtheta(const ModeIndex &mode, double theta, double phi);

/// f(x) together with d(x f)/dx. For u(r) = r f(n k r) the latter is
/// exactly du/dr evaluated at x = n k r.
struct RadialValue {
  cplx f;
  cplx d_xf;
};

/// j_l, y_l, h_l^(1) = j + i y or h_l^(2) = j - i y at complex x.
/// Throws std::domain_error at x = 0 for the singular kinds and
/// std::overflow_error when the result is not representable.
RadialValue spherical_radial(RadialKind kind, int l, cplx x);

} // namespace tw
