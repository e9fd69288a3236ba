#pragma once

#include "weylcal/grid.hpp"

namespace weylcal {

// Quadrature on the unit sphere S^{2n-1} ⊂ ℝ^{2n}. Nodes are stored in the
// coordinate order (x-block, ξ-block), so z_j = X_j + i X_{n+j}.
//
// n = 1: uniform midpoint rule on the circle.
// n = 2: product rule z1 = cosθ e^{iφ1}, z2 = sinθ e^{iφ2} with Gauss-Legendre
// nodes in u = cos 2θ and uniform midpoint grids in φ1, φ2. The θ-weights
// absorb the cosθ sinθ area factor.
struct SphereGrid {
  std::size_t n = 1;
  std::vector<double> nodes;    // size() * 2n doubles
  std::vector<double> weights;  // dσ weights, sum = area()
  std::vector<std::size_t> antipode;

  std::vector<double> angle;  // n = 1 only

  std::size_t Ktheta = 0, M1 = 0, M2 = 0;  // n = 2 only
  std::vector<double> theta, theta_w;
  std::vector<double> phi1, phi2;

  std::size_t size() const { return weights.size(); }
  const double* node(std::size_t i) const { return nodes.data() + i * 2 * n; }
  double area() const;
  std::size_t node_index(std::size_t it, std::size_t i1, std::size_t i2) const {
    return (it * M1 + i1) * M2 + i2;
  }
};

SphereGrid circle_grid(std::size_t M);
SphereGrid torus_grid(std::size_t Ktheta, std::size_t M1, std::size_t M2);

// ∫_{S^{2n-1}} z^p conj(z)^q dσ = δ_{pq} 2π^n Π p_i! / (n-1+|p|)!
double sphere_monomial_moment(std::size_t n, const std::vector<std::size_t>& p,
                              const std::vector<std::size_t>& q);

// Nodes and weights of the K-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(std::size_t K, std::vector<double>& x, std::vector<double>& w);

}  // namespace weylcal
