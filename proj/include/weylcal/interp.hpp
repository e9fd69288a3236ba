#pragma once

#include "weylcal/grid.hpp"

namespace weylcal {

enum class InterpMethod { ExactIndex, Cubic, Lagrange6, Bandlimited };
enum class Boundary { Zero, Wrap };

InterpMethod parse_interp(const std::string& name);

// X -> M X + c. Resampling supports monomial M (one nonzero per row and
// column: permutations, sign flips, per-axis scalings) plus translations;
// that covers every coordinate change used by the calculus.
struct AffineMap {
  std::vector<std::vector<double>> M;
  std::vector<double> c;

  static AffineMap identity(std::size_t d);
  static AffineMap translation(std::vector<double> shift);
  static AffineMap diagonal(std::vector<double> scale, std::vector<double> shift);
  // arg_j = scale[j] * X[src[j]] + shift[j]
  static AffineMap monomial(std::vector<std::size_t> src, std::vector<double> scale,
                            std::vector<double> shift);

  std::size_t dim() const { return c.size(); }
  std::vector<double> apply(const std::vector<double>& x) const;
};

// Values of f∘map on f's own grid. ExactIndex performs a pure index
// permutation and throws if the map is not grid-preserving.
SampledField resample_affine(const SampledField& f, const AffineMap& map, InterpMethod method,
                             Boundary bc = Boundary::Zero);

// Pointwise interpolation of f at an arbitrary location (Cubic/Lagrange6 only).
cplx interp_at(const SampledField& f, const double* point, InterpMethod method,
               Boundary bc = Boundary::Zero);

}  // namespace weylcal
