#pragma once

// Finite-difference checks of synthesized fields against Maxwell's
// equations, in spherical components.

#include "tw/maxwell_radial.hpp"
#include "tw/synthesis.hpp"

#include <functional>

namespace tw {

/// (E, H) at (r, theta, phi) in the local frame.
using PointField = std::function<FieldValue(const SphericalPosition &)>;

struct CurlResidual {
  double faraday; // |curl E - i k mu H| / max(|curl E|, |i k mu H|)
  double ampere;  // |curl H + i k eps E| / max(|curl H|, |i k eps E|)
  double worst() const { return faraday > ampere ? faraday : ampere; }
};

/// Central differences with steps h_rel * r in r and h_rel in the angles.
/// The point must keep theta +- h_rel inside (0, pi).
CurlResidual maxwell_curl_residual(const PointField &field, WaveNumber k,
                                   const Medium &med,
                                   const SphericalPosition &at,
                                   double h_rel = 1e-4);

/// |div(eps E)| / (|eps| |E| / r), central differences as above.
double divergence_residual(const PointField &field, const Medium &med,
                           const SphericalPosition &at, double h_rel = 1e-4);

/// PointField for a homogeneous-medium partial-wave expansion.
PointField expansion_field(std::vector<PartialWave> waves, WaveNumber k,
                           Medium med);

} // namespace tw
