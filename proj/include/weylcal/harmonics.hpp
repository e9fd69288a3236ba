#pragma once

#include "weylcal/grid.hpp"
#include "weylcal/heisenberg.hpp"
#include "weylcal/interp.hpp"
#include "weylcal/sphere.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weylcal {

// Polynomial in z and conj(z) on ℂⁿ, stored as monomial terms
// coef * z^a conj(z)^b with exponent rows packed (a_1..a_n b_1..b_n).
// Members of H^{α,β} are bihomogeneous and killed by Σ ∂²/∂z_i∂conj(z)_i;
// the container itself also holds general mixed-degree polynomials
// (needed for sphere-completeness checks), with alpha/beta advisory there.
struct HarmonicPolynomial {
  std::size_t n = 1;
  std::size_t alpha = 0, beta = 0;
  std::vector<std::vector<unsigned>> exps;
  std::vector<cplx> coef;

  cplx evaluate(const std::vector<cplx>& z) const;
};

enum class Picture { K, N, U };

struct PrincipalSeriesParams {
  std::size_t n = 1;  // = m + 1
  cplx mu = 0.0;
  int delta = 0;

  bool unitary_axis(double tol = 1e-12) const { return std::abs(mu.real()) < tol; }
};

std::size_t harmonic_dimension(std::size_t n, std::size_t alpha, std::size_t beta);

// Orthonormal basis of H^{α,β}(ℂⁿ) in L²(S^{2n-1}, dσ); empty exactly when
// n = 1 and α, β ≥ 1.
std::vector<HarmonicPolynomial> harmonic_basis(std::size_t n, std::size_t alpha,
                                               std::size_t beta);

// Apply Σ ∂²/∂z_i∂conj(z)_i on coefficients.
HarmonicPolynomial laplacian_apply(const HarmonicPolynomial& p);

// Exact ∫_S p conj(q) dσ via the monomial moment formula.
cplx harmonic_inner(const HarmonicPolynomial& p, const HarmonicPolynomial& q);

// One term per line: "a_1 .. a_n b_1 .. b_n re im".
std::string harmonic_to_text(const HarmonicPolynomial& p);
HarmonicPolynomial harmonic_from_text(const std::string& text, std::size_t n);

// Value of the degree -n-μ homogeneous extension p(X)|X|^{-n-μ-α-β} at a
// point of ℝ^{2n} packed (x-block, ξ-block).
cplx homogeneous_extension(const HarmonicPolynomial& p, cplx mu, const double* X);

// K picture: values at sphere quadrature nodes.
std::vector<cplx> realize_k_picture(const HarmonicPolynomial& p, const SphereGrid& sphere);

// N picture: extension evaluated at X = (1, 2t, x, ξ) on a rank 1+2m grid
// with axes ordered (t, x_1..x_m, ξ_1..ξ_m); requires n = m+1 and
// δ ≡ α+β (mod 2).
SampledField realize_n_picture(const HarmonicPolynomial& p, const PrincipalSeriesParams& pr,
                               const GridSpec& grid);

// U picture: N picture followed by a forward transform in t and all ξ axes,
// giving axes (ρ, x_1..x_m, η_1..η_m).
SampledField n_to_u(const SampledField& f);
SampledField realize_u_picture(const HarmonicPolynomial& p, const PrincipalSeriesParams& pr,
                               const GridSpec& grid);

enum class SpecialVectorKind { HPlus, HMinusB, F00, F01, F10, F11, Psi, PhiB };

// Closed-form model vectors. HPlus/HMinusB/Fab live on the N grid
// (t, x, ξ); Psi/PhiB live on the U grid (ρ, x, η). b has m+1 entries and is
// consumed only by HMinusB/PhiB.
SampledField special_vector(SpecialVectorKind kind, std::size_t m, const GridSpec& grid,
                            const std::vector<cplx>& b = {});

// π_{iλ,δ} restricted to N in the N picture:
// f(t, X) -> f(t - s - ½ω(A, X), X - A).
SampledField principal_series_act(const PrincipalSeriesParams& pr, const HeisenbergElement& g,
                                  const SampledField& f,
                                  InterpMethod fallback = InterpMethod::Cubic);

// A-dilation: f -> a^{-1-m-iλ} f(a^{-2} t, a^{-1} X), a > 0.
SampledField principal_series_act_dilation(const PrincipalSeriesParams& pr, double a,
                                           const SampledField& f,
                                           InterpMethod fallback = InterpMethod::Cubic);

}  // namespace weylcal
