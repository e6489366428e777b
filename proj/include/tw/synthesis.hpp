#pragma once

// Partial-wave synthesis of full vector fields, projection of field data
// back onto partial waves through the orthonormality of F_lm, multipole
// amplitudes and the single homogeneous-sphere boundary match.

#include "tw/harmonics.hpp"
#include "tw/maxwell_radial.hpp"

#include <functional>
#include <vector>

namespace tw {

/// One (l, m) term of the general solution: W = [[eta1, eta2], [zeta1,
/// zeta2]] (c1, c2), with the radial functions of kind1 and kind2.
class PartialWave {
public:
  /// Throws ValidationError for l = 0 (no transverse field) or kind1 ==
  /// kind2.
  PartialWave(ModeIndex mode, Coeff2 c1, Coeff2 c2,
              RadialKind kind1 = RadialKind::Hankel1,
              RadialKind kind2 = RadialKind::Hankel2);

  const ModeIndex &mode() const { return mode_; }
  const Coeff2 &c1() const { return c1_; }
  const Coeff2 &c2() const { return c2_; }
  RadialKind kind1() const { return kind1_; }
  RadialKind kind2() const { return kind2_; }

private:
  ModeIndex mode_;
  Coeff2 c1_, c2_;
  RadialKind kind1_, kind2_;
};

struct SphericalPosition {
  double r;
  double theta;
  double phi;
};

struct FieldSample {
  SphericalPosition position;
  CVec3 e;
  CVec3 h;
};

/// E^l, H^l of one partial wave at radius r in a homogeneous medium.
RadialFields wave_radial_fields(const PartialWave &wave, WaveNumber k,
                                const Medium &med, double r);

/// E = sum F_lm E^l, H = sum F_lm H^l. Throws ValidationError for r <= 0.
std::vector<FieldSample> synthesize(const std::vector<PartialWave> &waves,
                                    WaveNumber k, const Medium &med,
                                    const std::vector<SphericalPosition> &points);

/// Layered version. The wave coefficients describe the solution in the
/// outer medium; inside the last boundary the tangential state is carried
/// inward numerically (W continuous at every interface).
std::vector<FieldSample> synthesize(const std::vector<PartialWave> &waves,
                                    WaveNumber k, const RadialProfile &profile,
                                    const std::vector<SphericalPosition> &points,
                                    const OdeOptions &opts = {});

/// Field values (E, H) over the sphere at a fixed radius.
struct FieldValue {
  CVec3 e;
  CVec3 h;
};
using AngularField = std::function<FieldValue(const AngularPoint &)>;

struct ProjectOptions {
  bool check_convergence = true;
  /// Allowed change between the rule and its refinement, relative to
  /// max(1, |result|).
  double tolerance = 1e-11;
};

/// (E^l, H^l) = integral of F_lm^+ (E, H) over the sphere. NumericalError
/// if the rule is under-resolved.
RadialFields project(const AngularField &field, const ModeIndex &mode,
                     const QuadratureRule &rule, const ProjectOptions &opts = {});

/// Same for samples taken at rule.nodes() in node order. Throws
/// ValidationError if the sample positions do not match the nodes.
RadialFields project(const std::vector<FieldSample> &samples,
                     const ModeIndex &mode, const QuadratureRule &rule);

/// Reconstructs the sampling grid of a Gauss sphere grid: distinct theta
/// and phi counts, all radii equal. Throws ValidationError otherwise.
QuadratureRule rule_from_samples(const std::vector<FieldSample> &samples);

/// Inverts the known (eta, zeta) matrix at r to recover (c1, c2).
std::pair<Coeff2, Coeff2> recover_coefficients(int l, RadialKind kind1,
                                               RadialKind kind2, WaveNumber k,
                                               double r, const Medium &med,
                                               const RadialFields &projected);

struct MultipoleAmplitude {
  ModeIndex mode;
  cplx a_e; // c1 . e_theta
  cplx a_m; // c1 . e_phi
};

/// Requires c2 = 0 and kind1 = Hankel1 for every wave (outgoing multipole
/// expansion); ValidationError otherwise.
std::vector<MultipoleAmplitude>
multipole_amplitudes(const std::vector<PartialWave> &waves);

struct SphereMatch {
  Coeff2 scattered; // Hankel1 coefficients outside
  Coeff2 interior;  // BesselJ coefficients inside
};

/// Continuity of W at r = radius for an incident regular wave (kind1 =
/// BesselJ, c2 = 0) in the host. The theta (electric) and phi (magnetic)
/// polarizations decouple into two 2x2 systems.
SphereMatch match_sphere(int l, WaveNumber k, const Medium &sphere,
                         const Medium &host, double radius,
                         const PartialWave &incident);

/// max(4, ceil(x + 4 x^(1/3) + 2)) for size parameter x.
int default_lmax(double size_parameter);

} // namespace tw
