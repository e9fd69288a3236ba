#pragma once

#include "weylcal/interp.hpp"

#include <Eigen/Dense>

#include <optional>

namespace weylcal {

// Element (s, a, α) of the (2m+1)-dimensional Heisenberg group, with product
// (s, A)(s', A') = (s + s' + ω(A, A')/2, A + A').
struct HeisenbergElement {
  double s = 0.0;
  std::vector<double> a, alpha;

  std::size_t m() const { return a.size(); }
  static HeisenbergElement identity(std::size_t m) {
    return {0.0, std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  }
};

// ω(X, Y) = <ξ, y> - <x, η> on packed vectors X = (x, ξ), Y = (y, η) in ℝ^{2m}.
double symplectic_form(const std::vector<double>& X, const std::vector<double>& Y);
std::vector<double> pack_pair(const std::vector<double>& a, const std::vector<double>& alpha);

HeisenbergElement compose(const HeisenbergElement& g, const HeisenbergElement& h);
HeisenbergElement inverse(const HeisenbergElement& g);

// Tagged automorphism family. Construction of Symplectic(T) verifies that T
// preserves ω on basis pairs to 1e-12.
struct AutomorphismSpec {
  enum class Kind { Symplectic, Inner, Dilation, Inversion, TauRho, PsiRho };
  Kind kind = Kind::Inversion;
  Eigen::MatrixXd T;        // Symplectic
  HeisenbergElement base;   // Inner
  double param = 0.0;       // Dilation r, TauRho/PsiRho ρ

  static AutomorphismSpec symplectic(const Eigen::MatrixXd& T);
  static AutomorphismSpec inner(HeisenbergElement base);
  static AutomorphismSpec dilation(double r);
  static AutomorphismSpec inversion();
  static AutomorphismSpec tau_rho(double rho);
  static AutomorphismSpec psi_rho(double rho);
};

HeisenbergElement apply_automorphism(const AutomorphismSpec& tau, const HeisenbergElement& g);
// Inverse action. For PsiRho the inverse map (s, a, α) -> (ρs, 2a, ρα/2) is
// not itself a member of the family, so it is applied directly.
HeisenbergElement apply_automorphism_inverse(const AutomorphismSpec& tau,
                                             const HeisenbergElement& g);

// Generators of the oscillator action, each with its block symplectic matrix.
struct MetGenerator {
  enum class Kind { FourierJ, Shear, DiagDilation };
  Kind kind = Kind::FourierJ;
  Eigen::MatrixXd mat;  // Shear B (symmetric) or DiagDilation A (invertible)

  static MetGenerator fourier_j();
  static MetGenerator shear(const Eigen::MatrixXd& B);
  static MetGenerator diag_dilation(const Eigen::MatrixXd& A);

  // [[0,-I],[I,0]], [[I,0],[B,I]], [[A,0],[0,A^{-T}]] acting on packed (x, ξ)
  Eigen::MatrixXd symplectic_matrix(std::size_t m) const;
};

// ϑ(g)φ(x) = e^{2πi(s + <x,α> - <a,α>/2)} φ(x - a) on fields over ℝ^m,
// optionally twisted: ϑ_τ = ϑ ∘ τ^{-1}. Translations that land on the grid
// are exact index permutations; others use the fallback method. Boundary
// handling is periodic, so exact shifts stay exactly unitary.
SampledField schrodinger_act(const std::optional<AutomorphismSpec>& twist,
                             const HeisenbergElement& g, const SampledField& u,
                             InterpMethod fallback = InterpMethod::Cubic);

// FourierJ -> inverse Fourier transform (self-dual grid required),
// Shear(B) -> multiplication by e^{πi<Bx,x>} (Nyquist-guarded),
// DiagDilation(A) -> u(A^{-1}x)/|det A|^{1/2}.
SampledField metaplectic_act(const MetGenerator& gen, const SampledField& u,
                             InterpMethod fallback = InterpMethod::Bandlimited);

// ϖ_ρ(g)h(x,ξ) = e^{-2πiρ(s - (<ξ,a> - <x,α>)/2)} h(x-a, ξ-α) on ℝ^{2m}.
SampledField varpi_act(double rho, const HeisenbergElement& g, const SampledField& h,
                       InterpMethod fallback = InterpMethod::Cubic);

// The M₀ part of ϖ_ρ: pure substitution h ∘ g^{-1} for a generator matrix.
SampledField varpi_m0_act(const MetGenerator& gen, const SampledField& h);

// f(x, ξ - Bx) computed exactly as a modulation in the ξ-spectral domain.
SampledField shear_substitute(const SampledField& f, const Eigen::MatrixXd& B);

// True when every component of the shift is an integer number of grid steps
// of the corresponding axis (tolerance 1e-9 in index units).
bool translation_grid_exact(const GridSpec& spec, const std::vector<double>& shift);

}  // namespace weylcal
