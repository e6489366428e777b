#pragma once

// Angular points and product quadrature on the unit sphere:
// Gauss-Legendre in cos(theta) times the uniform trapezoid rule in phi.

#include <cstddef>
#include <span>
#include <vector>

namespace tw {

/// (theta, phi) with theta in [0, pi]; phi is wrapped into [0, 2 pi).
class AngularPoint {
public:
  /// Throws ValidationError for theta outside [0, pi] or non-finite input.
  AngularPoint(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

private:
  double theta_;
  double phi_;
};

struct QuadratureNode {
  AngularPoint point;
  double weight; // includes the sin(theta) dtheta dphi measure
};

class QuadratureRule {
public:
  /// n_theta Gauss-Legendre nodes in cos(theta), n_phi uniform phi nodes.
  QuadratureRule(int n_theta, int n_phi);

  /// N_theta = 2 L + 2, N_phi = 4 L + 4: exact for products of harmonics
  /// with l <= L.
  static QuadratureRule for_degree(int lmax);

  /// Both node counts doubled.
  QuadratureRule refined() const;

  int n_theta() const { return static_cast<int>(cos_theta_.size()); }
  int n_phi() const { return n_phi_; }

  std::span<const double> cos_theta() const { return cos_theta_; }
  /// Gauss-Legendre weights in cos(theta); they sum to 2.
  std::span<const double> theta_weights() const { return theta_weights_; }
  double phi_node(int j) const;

  /// Nodes in theta-major order: index = i_theta * n_phi + i_phi.
  std::vector<QuadratureNode> nodes() const;

private:
  std::vector<double> cos_theta_;
  std::vector<double> theta_weights_;
  int n_phi_;
};

/// Gauss-Legendre nodes/weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double> &nodes,
                    std::vector<double> &weights);

/// Fixed-order pairwise reduction; the result depends only on the input
/// order, never on how the terms were produced.
template <class T> T pairwise_sum(std::span<const T> terms) {
  if (terms.empty())
    return T{};
  if (terms.size() == 1)
    return terms[0];
  if (terms.size() <= 8) {
    T acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i)
      acc += terms[i];
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  T left = pairwise_sum(terms.first(half));
  left += pairwise_sum(terms.subspan(half));
  return left;
}

/// Integral of f over the sphere (f receives an AngularPoint) using rule.
template <class T, class F> T integrate(const QuadratureRule &rule, F &&f) {
  const auto nodes = rule.nodes();
  std::vector<T> terms;
  terms.reserve(nodes.size());
  for (const auto &node : nodes) {
    T v = f(node.point);
    v *= node.weight;
    terms.push_back(v);
  }
  return pairwise_sum<T>(terms);
}

} // namespace tw
