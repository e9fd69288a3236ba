#pragma once

#include "weylcal/interp.hpp"
#include "weylcal/sphere.hpp"

namespace weylcal {

struct MellinOptions {
  double ds = 0.005;             // log-radial step
  double rmin_factor = 1.0 / 1024.0;  // inner cutoff r_min = rmin_factor * min h
  double outer_margin = 4.0;     // outer cutoff R = min(L_a - margin * h_a)
  double tail_tol = 1e-6;        // allowed unresolved outer mass, relative
  InterpMethod method = InterpMethod::Lagrange6;
};

// Mellin restriction along rays: for a field f on ℝ^{2n},
//   M_plus(λ)(σ) = ∫_0^∞ t^{n+iλ} f(tσ) dt/t,
//   M(λ,δ)(σ)    = (1/4π) [M_plus(λ)(σ) + (-1)^δ M_plus(λ)(-σ)].
// Radial profiles e^{ns} f(e^s σ) are extracted once per sphere node on a
// log lattice; each λ is then a weighted phase sum. Below r_min the integrand
// is closed in analytic form using f(0); beyond R an extrapolated tail-mass
// estimate guards against unresolved decay.
class MellinTransform {
 public:
  MellinTransform(const SampledField& f, SphereGrid sphere, MellinOptions opt = {});

  std::vector<cplx> plus_part(double lambda) const;
  std::vector<cplx> evaluate(double lambda, int delta) const;
  // ∫_S |M(λ,δ)f|^2 dσ by the sphere quadrature
  double norm2_integrand(double lambda, int delta) const;

  const SphereGrid& sphere() const { return sphere_; }
  double rmin() const { return rmin_; }
  double rmax() const { return rmax_; }

 private:
  SphereGrid sphere_;
  std::size_t n_ = 1;
  double rmin_ = 0.0, rmax_ = 0.0;
  std::vector<double> s_, w_;        // log-radial nodes and trapezoid weights
  std::vector<cplx> prof_;           // size() x s_.size(), row-major by node
  cplx f0_{0.0, 0.0};
};

// Odd-count Simpson lattice on [a, b].
struct SimpsonLattice {
  std::vector<double> x, w;
};
SimpsonLattice simpson_lattice(double a, double b, std::size_t count);

// 2π Σ_δ ∫ ||M(λ,δ)f||^2 dλ over the given λ lattice; equals ||f||^2 when the
// lattice covers the spectral content.
double mellin_plancherel_total(const MellinTransform& mt, const SimpsonLattice& lam);

}  // namespace weylcal
