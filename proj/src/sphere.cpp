#include "weylcal/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylcal {

namespace {

constexpr double kPi = std::numbers::pi;

void legendre_pd(std::size_t K, double t, double& p, double& dp) {
  double p0 = 1.0, p1 = t;
  if (K == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (std::size_t k = 2; k <= K; ++k) {
    double kk = static_cast<double>(k);
    double p2 = ((2.0 * kk - 1.0) * t * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = static_cast<double>(K) * (t * p1 - p0) / (t * t - 1.0);
}

}  // namespace

void gauss_legendre(std::size_t K, std::vector<double>& x, std::vector<double>& w) {
  if (K == 0) throw std::invalid_argument("gauss_legendre: K must be positive");
  x.assign(K, 0.0);
  w.assign(K, 0.0);
  for (std::size_t i = 0; i < K; ++i) {
    double t = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(K) + 0.5));
    if (K == 1) t = 0.0;
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 64; ++it) {
      legendre_pd(K, t, p, dp);
      double step = p / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    legendre_pd(K, t, p, dp);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

double SphereGrid::area() const {
  double fact = 1.0;
  for (std::size_t k = 2; k < n; ++k) fact *= static_cast<double>(k);
  return 2.0 * std::pow(kPi, static_cast<double>(n)) / fact;
}

SphereGrid circle_grid(std::size_t M) {
  if (M < 2 || M % 2 != 0) throw std::invalid_argument("circle_grid: M must be even");
  SphereGrid g;
  g.n = 1;
  g.nodes.resize(2 * M);
  g.weights.assign(M, 2.0 * kPi / static_cast<double>(M));
  g.angle.resize(M);
  g.antipode.resize(M);
  for (std::size_t i = 0; i < M; ++i) {
    double th = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(M);
    g.angle[i] = th;
    g.nodes[2 * i] = std::cos(th);
    g.nodes[2 * i + 1] = std::sin(th);
    g.antipode[i] = (i + M / 2) % M;
  }
  return g;
}

SphereGrid torus_grid(std::size_t Ktheta, std::size_t M1, std::size_t M2) {
  if (M1 % 2 != 0 || M2 % 2 != 0)
    throw std::invalid_argument("torus_grid: M1, M2 must be even");
  SphereGrid g;
  g.n = 2;
  g.Ktheta = Ktheta;
  g.M1 = M1;
  g.M2 = M2;
  std::vector<double> u, wu;
  gauss_legendre(Ktheta, u, wu);
  g.theta.resize(Ktheta);
  g.theta_w.resize(Ktheta);
  for (std::size_t i = 0; i < Ktheta; ++i) {
    g.theta[i] = 0.5 * std::acos(u[i]);
    g.theta_w[i] = wu[i] / 4.0;  // cosθ sinθ dθ = -du/4
  }
  g.phi1.resize(M1);
  g.phi2.resize(M2);
  for (std::size_t i = 0; i < M1; ++i)
    g.phi1[i] = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(M1);
  for (std::size_t i = 0; i < M2; ++i)
    g.phi2[i] = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(M2);
  std::size_t total = Ktheta * M1 * M2;
  g.nodes.resize(4 * total);
  g.weights.resize(total);
  g.antipode.resize(total);
  double wphi = (2.0 * kPi / static_cast<double>(M1)) * (2.0 * kPi / static_cast<double>(M2));
  for (std::size_t it = 0; it < Ktheta; ++it) {
    double ct = std::cos(g.theta[it]);
    double st = std::sin(g.theta[it]);
    for (std::size_t i1 = 0; i1 < M1; ++i1) {
      for (std::size_t i2 = 0; i2 < M2; ++i2) {
        std::size_t idx = g.node_index(it, i1, i2);
        double* X = g.nodes.data() + 4 * idx;
        X[0] = ct * std::cos(g.phi1[i1]);
        X[1] = st * std::cos(g.phi2[i2]);
        X[2] = ct * std::sin(g.phi1[i1]);
        X[3] = st * std::sin(g.phi2[i2]);
        g.weights[idx] = g.theta_w[it] * wphi;
        g.antipode[idx] = g.node_index(it, (i1 + M1 / 2) % M1, (i2 + M2 / 2) % M2);
      }
    }
  }
  return g;
}

double sphere_monomial_moment(std::size_t n, const std::vector<std::size_t>& p,
                              const std::vector<std::size_t>& q) {
  if (p.size() != n || q.size() != n)
    throw std::invalid_argument("sphere_monomial_moment: exponent size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] != q[i]) return 0.0;
  std::size_t total = 0;
  double num = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += p[i];
    for (std::size_t k = 2; k <= p[i]; ++k) num *= static_cast<double>(k);
  }
  double den = 1.0;
  for (std::size_t k = 2; k <= n - 1 + total; ++k) den *= static_cast<double>(k);
  return 2.0 * std::pow(kPi, static_cast<double>(n)) * num / den;
}

}  // namespace weylcal
