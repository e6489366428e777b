#include "tw/quadrature.hpp"

#include "tw/errors.hpp"

#include <cmath>
#include <numbers>

namespace tw {

AngularPoint::AngularPoint(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw ValidationError("angular point requires finite angles");
  if (theta < 0.0 || theta > std::numbers::pi)
    throw ValidationError("theta must lie in [0, pi]");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0)
    phi += two_pi;
  if (phi >= two_pi)
    phi = 0.0;
  theta_ = theta;
  phi_ = phi;
}

void gauss_legendre(int n, std::vector<double> &nodes,
                    std::vector<double> &weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = -x;
    nodes[hi] = x;
    weights[lo] = w;
    weights[hi] = w;
  }
  if (n % 2 == 1)
    nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

QuadratureRule::QuadratureRule(int n_theta, int n_phi) : n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw ValidationError("quadrature rule needs at least one node per axis");
  gauss_legendre(n_theta, cos_theta_, theta_weights_);
}

QuadratureRule QuadratureRule::for_degree(int lmax) {
  if (lmax < 0)
    throw ValidationError("quadrature degree must be >= 0");
  return QuadratureRule(2 * lmax + 2, 4 * lmax + 4);
}

QuadratureRule QuadratureRule::refined() const {
  return QuadratureRule(2 * n_theta(), 2 * n_phi_);
}

double QuadratureRule::phi_node(int j) const {
  return 2.0 * std::numbers::pi * j / n_phi_;
}

std::vector<QuadratureNode> QuadratureRule::nodes() const {
  std::vector<QuadratureNode> out;
  out.reserve(cos_theta_.size() * static_cast<std::size_t>(n_phi_));
  const double dphi = 2.0 * std::numbers::pi / n_phi_;
  for (std::size_t i = 0; i < cos_theta_.size(); ++i) {
    const double theta = std::acos(cos_theta_[i]);
    for (int j = 0; j < n_phi_; ++j)
      out.push_back({AngularPoint(theta, phi_node(j)), theta_weights_[i] * dphi});
  }
  return out;
}

} // namespace tw
