#pragma once

#include "weylcal/grid.hpp"

namespace weylcal {

enum class FourierDirection { Forward, Inverse };

// Unnormalized DFT plan for one length: y_k = sum_j x_j e^{sign * 2pi i jk/n}.
// Radix-2 for powers of two, Bluestein otherwise. Reusable across lines.
class DftPlan {
 public:
  DftPlan(std::size_t n, int sign);
  void apply(cplx* line) const;
  std::size_t size() const { return n_; }

 private:
  void pow2_apply(cplx* a, std::size_t n, int sign, const std::vector<std::size_t>& rev,
                  const std::vector<cplx>& tw) const;

  std::size_t n_;
  int sign_;
  bool pow2_;
  std::vector<std::size_t> rev_;
  std::vector<cplx> tw_;  // e^{-2pi i j/len}, j < len/2, for the pow2 size in use
  // Bluestein state (pow2_ == false)
  std::size_t m_ = 0;
  std::vector<std::size_t> mrev_;
  std::vector<cplx> mtw_;
  std::vector<cplx> chirp_;    // e^{sign * pi i j^2/n}
  std::vector<cplx> bspec_;    // forward FFT_m of the wrapped conjugate chirp
};

// Continuum-convention partial Fourier transform along one axis.
// Forward: F(rho_j) = h * (-1)^{j-N/2} * DFT_-[(-1)^k f_k], an approximation of
// integral f(t) e^{-2pi i t rho} dt at the dual nodes rho_j = (j-N/2)/(2L).
// Inverse is the exact grid-level inverse. Output axis is input.dual().
SampledField fourier_axis(const SampledField& f, std::size_t axis, FourierDirection dir);

// Transform along every axis.
SampledField fourier_all(const SampledField& f, FourierDirection dir);

// F_symp f = (full Fourier transform of f) composed with J(x,xi) = (-xi, x),
// as an exact index permutation. Requires rank 2m with the x and xi axis
// blocks sharing geometry.
SampledField symplectic_fourier(const SampledField& f);

}  // namespace weylcal
