#pragma once

#include <cstddef>
#include <vector>

#include "weylcal/grid.hpp"
#include "weylcal/report.hpp"

namespace weylcal {

// Modified Bessel function of the second kind through the integral
// representation K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du, z > 0.
// The normalized flag returns Ktilde_nu(z) = (z/2)^{-nu} K_nu(z).
double bessel_k(double nu, double z, bool normalized = false);

enum class IMuMode { Closed, Quadrature };

// I_mu(a, eta) = int_{R^m} (a^2 + |xi|^2)^{-mu} e^{-2 pi i <xi, eta>} d xi
// for mu > m/2 and a > 0, with m = eta.size().  Closed mode evaluates
// (2 pi^{m/2} / Gamma(mu)) a^{m - 2 mu} Ktilde_{m/2 - mu}(2 pi a |eta|);
// quadrature mode evaluates the defining integral (m = 1: Filon segments up
// to |xi| = 40/a plus a three-term analytic tail).
double i_mu(double mu, double a, const std::vector<double>& eta,
            IMuMode mode = IMuMode::Closed);

// The three cosine/sine transform identities behind the K-type computation:
// ExpCos   int_0^inf exp(-d w)/w cos(st) dt            = K_0(c W),
// BesselCos int_0^inf K_nu(d w)/w^nu cos(st) dt        = 2^{nu-1} sqrt(pi)
//            d^{-nu} c^{1-2nu} Ktilde_{1/2-nu}(c W),
// BesselSin int_0^inf t K_1(d w)/w sin(st) dt          = (pi s / 2d)
//            exp(-c W)/W,
// where w = sqrt(t^2 + c^2) and W = sqrt(s^2 + d^2).
enum class ErdelyiIdentity { ExpCos, BesselCos, BesselSin };

struct ErdelyiParams {
  double c = 1.0;
  double d = 1.0;
  double s = 1.0;
  double nu = 1.0;  // BesselCos only
};

// Left side by adaptive quadrature against the closed right side; the report
// carries the relative discrepancy at 1e-6 and both values in aux.
CheckReport erdelyi_identity_check(ErdelyiIdentity which, const ErdelyiParams& p,
                                   std::size_t budget = 200000);

enum class MinimalKTypeKind { Plus, MinusB };

// Transforms the closed-form K-type vector h^+ (or h_b^-) from the N grid by
// FFT and fits the single constant c in
//   F_t F_xi h^+   = c K_0(2 pi psi),
//   F_t F_xi h_b^- = c (phi_b / psi) exp(-2 pi psi)
// by least squares over the resolved window |rho|, |eta| in [4h, L/2].  The
// report carries the max pointwise shape deviation, the distance of c from
// both candidate normalizations (as printed and with one power of sqrt(pi)
// removed), and the realness defect of the transform.
CheckReport minimal_ktype_check(std::size_t m, const GridSpec& grid, MinimalKTypeKind kind,
                                const std::vector<cplx>& b = {});

}  // namespace weylcal
