#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "weylcal/heisenberg.hpp"
#include "weylcal/report.hpp"

namespace weylcal {

// Integral operator on functions sampled over a configuration grid,
// (Tu)(x_j) = h^m sum_k K(x_j, x_k) u(x_k),
// with row index = output point and column index = input point, both in the
// row-major order of the grid.
struct HSOperator {
  GridSpec config;
  Eigen::MatrixXcd kernel;

  // Quadrature weight h^m of the configuration grid.
  double quad_weight() const { return config.weight(); }

  SampledField apply(const SampledField& u) const;
  double hs_norm() const;
  cplx trace() const;
};

HSOperator hs_identity(const GridSpec& config);
HSOperator hs_compose(const HSOperator& a, const HSOperator& b);

// Phase-space symbol sampled over a rank-2m grid, x axes first, then xi axes.
// An optional twist records which tau_rho scaling the symbol is meant for.
struct WeylSymbol {
  SampledField field;
  std::optional<double> rho;
};

// Symbol grid matched to a configuration grid so that quantization is an
// exact index gather: x axes carry 2N nodes at half the configuration
// spacing (midpoints (x_j + x_k)/2 land on nodes), and the xi axes are sized
// so their Fourier duals sample every difference x_j - x_k exactly.
GridSpec canonical_symbol_grid(const GridSpec& config);

// Like the canonical grid but with the xi axes chosen so that the x axes and
// the xi-Fourier duals coincide.  On this grid the dagger maps at rho = 2 are
// pure index permutations.
GridSpec square_symbol_grid(const GridSpec& config);

// Configuration grid a symbol grid quantizes onto (inverse of the above).
GridSpec symbol_config_grid(const GridSpec& symbol);

// Weyl quantization S((x+y)/2, xi) -> kernel K(x, y).  With a twist rho the
// symbol is read at xi scaled by 4/rho first.  The explicit argument, when
// present, overrides the twist stored on the symbol.
HSOperator op_quantize(const WeylSymbol& S, std::optional<double> rho = std::nullopt,
                       InterpMethod fallback = InterpMethod::Bandlimited);

// Exact inverse of op_quantize on symbols the canonical grid can represent;
// always an isometry from Hilbert-Schmidt norm to the symbol L2 norm.
WeylSymbol op_dequantize(const HSOperator& T, std::optional<double> rho = std::nullopt,
                         InterpMethod fallback = InterpMethod::Bandlimited);

enum class DaggerSide {
  Left,   // Op(dagger(S)) u = Op(S) applied to the reflected argument
  Right,  // Op(dagger(S)) u = reflection of Op(S) u
};

// Involutions S -> dagger(S) acting on the partial Fourier transform in xi by
// the swap (x, eta) -> (+-2 eta / rho, +-rho x / 2); exact index permutations
// on the square symbol grid at rho = 2, interpolated otherwise.
WeylSymbol dagger(const WeylSymbol& S, double rho, DaggerSide side,
                  InterpMethod fallback = InterpMethod::Bandlimited);

// Eigenspace split S = S_plus + S_minus under the right dagger; quantized,
// the two halves map into operators with even and odd ranges.
std::pair<WeylSymbol, WeylSymbol> parity_split(const WeylSymbol& S, double rho,
                                               InterpMethod fallback = InterpMethod::Bandlimited);

enum class CovarianceTag {
  HeisenbergCovariance,  // conjugation by the Schroedinger action vs. symbol translation
  MetaplecticGenerator,  // conjugation by metaplectic generators vs. symbol substitution
  JacobiRho,             // twisted quantization vs. the psi_rho-twisted action
  FtConjugation,         // partial Fourier transform in t vs. slice-wise phase-space action
};

struct CovarianceParams {
  std::size_t m = 1;
  std::size_t N = 64;     // configuration samples per axis (power of two)
  double rho = 2.0;       // twist for JacobiRho
  double lambda = 1.3;    // spectral parameter for FtConjugation
  int delta = 0;          // parity for FtConjugation
  double tolerance = 1e-6;
  InterpMethod fallback = InterpMethod::Bandlimited;
};

// Draws `trials` random group elements and symbols/vectors from the seeded
// substream and reports the worst relative residual of the covariance
// identity selected by the tag.
CheckReport covariance_residual(CovarianceTag tag, const CovarianceParams& params, int trials,
                                std::uint64_t seed);

}  // namespace weylcal
