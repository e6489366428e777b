#include "tw/harmonics.hpp"

#include "tw/errors.hpp"

#include <cmath>
#include <map>
#include <string>

namespace tw {

namespace {

constexpr double kBasisTol = 1e-14;
constexpr double kConvergenceTol = 1e-12;
constexpr int kMaxRefinements = 6;

double vsh_norm(int l) { return std::sqrt(double(l) * (l + 1)); }

// Linear combination sum_m c_m Y_{l m} at fixed l, closed under L+, L-, L_z.
class LadderExpr {
public:
  LadderExpr(int l, std::map<int, cplx> terms) : l_(l), terms_(std::move(terms)) {}

  static LadderExpr of(const ModeIndex &mode) {
    return {mode.l(), {{mode.m(), 1.0}}};
  }

  LadderExpr raise() const { return shift(true); }
  LadderExpr lower() const { return shift(false); }

  LadderExpr lz() const {
    LadderExpr out{l_, {}};
    for (auto [m, c] : terms_)
      out.terms_[m] += double(m) * c;
    return out;
  }

  LadderExpr operator+(const LadderExpr &o) const {
    LadderExpr out = *this;
    for (auto [m, c] : o.terms_)
      out.terms_[m] += c;
    return out;
  }
  LadderExpr operator-(const LadderExpr &o) const { return *this + o * cplx{-1.0}; }
  LadderExpr operator*(cplx s) const {
    LadderExpr out = *this;
    for (auto &[m, c] : out.terms_)
      c *= s;
    return out;
  }

  cplx evaluate(const AngularPoint &p) const {
    cplx sum = 0.0;
    for (auto [m, c] : terms_)
      if (c != cplx{0.0})
        sum += c * ylm(ModeIndex(l_, m), p.theta(), p.phi());
    return sum;
  }

private:
  LadderExpr shift(bool up) const {
    LadderExpr out{l_, {}};
    for (auto [m, c] : terms_) {
      const auto step = up ? ladder_plus(ModeIndex(l_, m))
                           : ladder_minus(ModeIndex(l_, m));
      if (step.shifted)
        out.terms_[step.shifted->m()] += step.coeff * c;
    }
    return out;
  }

  int l_;
  std::map<int, cplx> terms_;
};

LadderExpr lx(const LadderExpr &e) { return (e.raise() + e.lower()) * 0.5; }
LadderExpr ly(const LadderExpr &e) {
  return (e.raise() - e.lower()) * (1.0 / (2.0 * I_unit));
}

std::vector<CTensor3> sample(const TensorField &f,
                             const std::vector<QuadratureNode> &nodes) {
  std::vector<CTensor3> out;
  out.reserve(nodes.size());
  for (const auto &n : nodes)
    out.push_back(f(n.point));
  return out;
}

CTensor3 gram_from_samples(const std::vector<CTensor3> &a,
                           const std::vector<CTensor3> &b,
                           const std::vector<QuadratureNode> &nodes) {
  std::vector<CTensor3> terms;
  terms.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    terms.push_back(hermitian(a[i]) * b[i] * nodes[i].weight);
  return pairwise_sum<CTensor3>(terms);
}

TensorField flm_field(const ModeIndex &mode) {
  return [mode](const AngularPoint &p) { return flm(mode, p); };
}

} // namespace

OrthoBasis::OrthoBasis(const CVec3 &a, const CVec3 &b, const CVec3 &c)
    : a_(a), b_(b), c_(c) {
  const CVec3 *v[3] = {&a_, &b_, &c_};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(hdot(*v[i], *v[j]) - expect) > kBasisTol)
        throw ValidationError("basis vectors must be orthonormal");
    }
}

OrthoBasis OrthoBasis::spherical() {
  return {CVec3::e_r(), CVec3::e_theta(), CVec3::e_phi()};
}

CVec3 xlm(const ModeIndex &mode, const AngularPoint &p) {
  if (mode.l() == 0)
    return {};
  // L = -i e_phi d_theta + i e_theta / sin(theta) d_phi, d_phi Y = i m Y
  const double lam = vsh_norm(mode.l());
  const cplx x_theta =
      -double(mode.m()) * ylm_over_sin(mode, p.theta(), p.phi()) / lam;
  const cplx x_phi = -I_unit * ylm_dtheta(mode, p.theta(), p.phi()) / lam;
  return {0.0, x_theta, x_phi};
}

CTensor3 flm(const ModeIndex &mode, const AngularPoint &p) {
  const CVec3 er = CVec3::e_r();
  const cplx y = ylm(mode, p.theta(), p.phi());
  const CVec3 x = xlm(mode, p);
  return y * dyad(er, er) + dyad(x, CVec3::e_theta()) +
         dyad(cross(er, x), CVec3::e_phi());
}

CTensor3 flm_explicit(const ModeIndex &mode, const AngularPoint &p) {
  const CVec3 er = CVec3::e_r();
  const double theta = p.theta(), phi = p.phi();
  const cplx y = ylm(mode, theta, phi);
  CTensor3 out = y * dyad(er, er);
  if (mode.l() == 0)
    return out;

  const double lam = vsh_norm(mode.l());
  const double s = std::sin(theta);

  cplx ladder_diff = 0.0; // (e^{-i phi} L+ - e^{i phi} L-) Y
  if (auto up = ladder_plus(mode); up.shifted)
    ladder_diff += std::polar(1.0, -phi) * up.coeff * ylm(*up.shifted, theta, phi);
  if (auto dn = ladder_minus(mode); dn.shifted)
    ladder_diff -= std::polar(1.0, phi) * dn.coeff * ylm(*dn.shifted, theta, phi);

  const cplx lz_y = double(mode.m()) * y;
  CTensor3 bracket;
  if (s > 0.0) {
    bracket = (lz_y / (s * lam)) * tangential_projector() +
              (I_unit * s / 2.0 * ladder_diff / (s * lam)) * dual(er);
  } else {
    // exact pole: the sin(theta) factors cancel analytically
    const cplx lz_y_over_s =
        double(mode.m()) * ylm_over_sin(mode, theta, phi);
    bracket = (lz_y_over_s / lam) * tangential_projector() +
              (I_unit / 2.0 * ladder_diff / lam) * dual(er);
  }
  return out - bracket;
}

CTensor3 glm(const ModeIndex &mode, const AngularPoint &p,
             const OrthoBasis &basis) {
  const CVec3 er = CVec3::e_r();
  const cplx y = ylm(mode, p.theta(), p.phi());
  const CVec3 x = xlm(mode, p);
  return y * dyad(er, basis.a()) + dyad(x, basis.b()) +
         dyad(cross(er, x), basis.c());
}

CTensor3 gram(const TensorField &a, const TensorField &b,
              const QuadratureRule &rule) {
  const auto nodes = rule.nodes();
  return gram_from_samples(sample(a, nodes), sample(b, nodes), nodes);
}

CTensor3 ortho_matrix(const ModeIndex &a, const ModeIndex &b,
                      const QuadratureRule &rule) {
  const CTensor3 coarse = gram(flm_field(a), flm_field(b), rule);
  const CTensor3 fine = gram(flm_field(a), flm_field(b), rule.refined());
  const double change = max_abs(fine - coarse);
  if (change > kConvergenceTol)
    throw NumericalError("quadrature rule " + std::to_string(rule.n_theta()) +
                         "x" + std::to_string(rule.n_phi()) +
                         " under-resolved for modes (l=" +
                         std::to_string(a.l()) + ", l'=" +
                         std::to_string(b.l()) + "): refinement changed the "
                         "result by " + std::to_string(change));
  return coarse;
}

CTensor3 ortho_matrix(const ModeIndex &a, const ModeIndex &b) {
  QuadratureRule rule = QuadratureRule::for_degree(std::max(a.l(), b.l()));
  CTensor3 prev = gram(flm_field(a), flm_field(b), rule);
  for (int i = 0; i < kMaxRefinements; ++i) {
    rule = rule.refined();
    const CTensor3 next = gram(flm_field(a), flm_field(b), rule);
    if (max_abs(next - prev) < kConvergenceTol)
      return next;
    prev = next;
  }
  throw NumericalError("orthonormality integral did not converge");
}

cplx scalar_overlap(const ModeIndex &a, const ModeIndex &b,
                    const QuadratureRule &rule) {
  return integrate<cplx>(rule, [&](const AngularPoint &p) {
    return std::conj(ylm(a, p.theta(), p.phi())) * ylm(b, p.theta(), p.phi());
  });
}

cplx vector_overlap(const ModeIndex &a, const ModeIndex &b,
                    const QuadratureRule &rule) {
  return integrate<cplx>(rule, [&](const AngularPoint &p) {
    return hdot(xlm(a, p), xlm(b, p));
  });
}

cplx cross_overlap(const ModeIndex &a, const ModeIndex &b,
                   const QuadratureRule &rule) {
  return integrate<cplx>(rule, [&](const AngularPoint &p) {
    return cross(conj(xlm(a, p)), xlm(b, p))[R];
  });
}

OverlapTable overlap_table(const std::vector<ModeIndex> &modes,
                           const QuadratureRule &rule) {
  const auto nodes = rule.nodes();
  const std::size_t n = modes.size(), q = nodes.size();
  std::vector<cplx> y(n * q);
  std::vector<CVec3> x(n * q);
  std::vector<CTensor3> f(n * q);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < q; ++i) {
      const auto &p = nodes[i].point;
      y[a * q + i] = ylm(modes[a], p.theta(), p.phi());
      x[a * q + i] = xlm(modes[a], p);
      f[a * q + i] = flm(modes[a], p);
    }

  OverlapTable t;
  t.size = n;
  t.gram.resize(n * n);
  t.scalar.resize(n * n);
  t.vector.resize(n * n);
  t.cross.resize(n * n);
  std::vector<CTensor3> tg(q);
  std::vector<cplx> ts(q), tv(q), tc(q);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < q; ++i) {
        const double w = nodes[i].weight;
        const std::size_t ia = a * q + i, ib = b * q + i;
        tg[i] = hermitian(f[ia]) * f[ib] * w;
        ts[i] = std::conj(y[ia]) * y[ib] * w;
        tv[i] = hdot(x[ia], x[ib]) * w;
        tc[i] = cross(conj(x[ia]), x[ib])[R] * w;
      }
      const std::size_t k = a * n + b;
      t.gram[k] = pairwise_sum<CTensor3>(tg);
      t.scalar[k] = pairwise_sum<cplx>(ts);
      t.vector[k] = pairwise_sum<cplx>(tv);
      t.cross[k] = pairwise_sum<cplx>(tc);
    }
  return t;
}

double l_squared_check(const ModeIndex &mode, const AngularPoint &p) {
  const auto y = LadderExpr::of(mode);
  const auto l2 = y.lz().lz() + (y.lower().raise() + y.raise().lower()) * 0.5;
  const double eig = double(mode.l()) * (mode.l() + 1);
  return std::abs(l2.evaluate(p) - eig * y.evaluate(p));
}

double lz_check(const ModeIndex &mode, const AngularPoint &p) {
  const auto y = LadderExpr::of(mode);
  const auto lz = (y.lower().raise() - y.raise().lower()) * 0.5;
  return std::abs(lz.evaluate(p) - double(mode.m()) * y.evaluate(p));
}

cplx l_dot_xlm(const ModeIndex &mode, const AngularPoint &p) {
  if (mode.l() == 0)
    return 0.0;
  const auto y = LadderExpr::of(mode);
  const auto ax = lx(y), ay = ly(y), az = y.lz();
  const auto l_dot = lx(ax) + ly(ay) + az.lz();
  return l_dot.evaluate(p) / vsh_norm(mode.l());
}

cplx l_dot_er_cross_xlm(const ModeIndex &mode, const AngularPoint &p) {
  if (mode.l() == 0)
    return 0.0;
  const double s = std::sin(p.theta());
  if (s == 0.0)
    throw ValidationError("L.(e_r x X) is evaluated away from the poles");
  const CVec3 x = xlm(mode, p);
  const cplx v_theta = -x[Phi];
  // sin(theta) V_phi = sin(theta) X_theta = -m Y / sqrt(l(l+1))
  const cplx d_theta_s_vphi = -double(mode.m()) *
                              ylm_dtheta(mode, p.theta(), p.phi()) /
                              vsh_norm(mode.l());
  const cplx d_phi_vtheta = I_unit * double(mode.m()) * v_theta;
  return -I_unit / s * (d_theta_s_vphi - d_phi_vtheta);
}

std::array<cplx, 3> xlm_cartesian(const ModeIndex &mode,
                                  const AngularPoint &p) {
  if (mode.l() == 0)
    return {};
  const auto y = LadderExpr::of(mode);
  const double lam = vsh_norm(mode.l());
  return {lx(y).evaluate(p) / lam, ly(y).evaluate(p) / lam,
          y.lz().evaluate(p) / lam};
}

std::array<std::array<double, 3>, 3> frame_to_cartesian(const AngularPoint &p) {
  const double st = std::sin(p.theta()), ct = std::cos(p.theta());
  const double sp = std::sin(p.phi()), cp = std::cos(p.phi());
  // rows x, y, z; columns e_r, e_theta, e_phi
  return {{{st * cp, ct * cp, -sp}, {st * sp, ct * sp, cp}, {ct, -st, 0.0}}};
}

} // namespace tw
