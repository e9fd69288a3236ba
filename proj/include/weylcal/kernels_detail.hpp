#pragma once
#include <complex>
#include <cstddef>
#include <vector>

// Shared pieces of the kernel implementations. Both translation units (scalar
// reference and AVX2) include this header so block layout, tails and the
// partial-sum combine tree are literally the same code.

namespace weylcal::kernels::detail {

using cplx = std::complex<double>;

inline constexpr std::size_t kBlockDoubles = 1024;  // 512 complex

// Fixed pairwise combine: adjacent pairs, repeat. In-place, order pinned.
inline double tree_combine(std::vector<double>& s) {
  std::size_t m = s.size();
  if (m == 0) return 0.0;
  while (m > 1) {
    std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) s[i] = s[2 * i] + s[2 * i + 1];
    if (m & 1) {
      s[half] = s[m - 1];
      m = half + 1;
    } else {
      m = half;
    }
  }
  return s[0];
}

inline cplx tree_combine_c(std::vector<cplx>& s) {
  std::size_t m = s.size();
  if (m == 0) return cplx(0.0, 0.0);
  while (m > 1) {
    std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) s[i] = s[2 * i] + s[2 * i + 1];
    if (m & 1) {
      s[half] = s[m - 1];
      m = half + 1;
    } else {
      m = half;
    }
  }
  return s[0];
}

// Scalar block partial of sum x[i]^2... shared by both paths for tails.
// Lane accumulation over the 4-aligned prefix, combine (l0+l2)+(l1+l3),
// then sequential tail.
inline double block_sum(const double* x, std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    a0 = a0 + x[i];
    a1 = a1 + x[i + 1];
    a2 = a2 + x[i + 2];
    a3 = a3 + x[i + 3];
  }
  double s = (a0 + a2) + (a1 + a3);
  for (std::size_t i = n4; i < n; ++i) s = s + x[i];
  return s;
}

inline double block_sum_abs2(const double* xd, std::size_t nd) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t n4 = nd & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    a0 = a0 + xd[i] * xd[i];
    a1 = a1 + xd[i + 1] * xd[i + 1];
    a2 = a2 + xd[i + 2] * xd[i + 2];
    a3 = a3 + xd[i + 3] * xd[i + 3];
  }
  double s = (a0 + a2) + (a1 + a3);
  for (std::size_t i = n4; i < nd; ++i) s = s + xd[i] * xd[i];
  return s;
}

inline cplx cmul1(cplx a, cplx b) {
  double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  return cplx(ar * br - ai * bi, ai * br + ar * bi);
}

// Block partial of sum x[i]*y[i] over n complex: 2 complex lanes, combine
// lane0+lane1, sequential tail.
inline cplx block_dotu(const cplx* x, const cplx* y, std::size_t n) {
  cplx a0(0.0, 0.0), a1(0.0, 0.0);
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    a0 = a0 + cmul1(x[i], y[i]);
    a1 = a1 + cmul1(x[i + 1], y[i + 1]);
  }
  cplx s = a0 + a1;
  for (std::size_t i = n2; i < n; ++i) s = s + cmul1(x[i], y[i]);
  return s;
}

inline cplx block_dotc(const cplx* x, const cplx* y, std::size_t n) {
  cplx a0(0.0, 0.0), a1(0.0, 0.0);
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    a0 = a0 + cmul1(std::conj(x[i]), y[i]);
    a1 = a1 + cmul1(std::conj(x[i + 1]), y[i + 1]);
  }
  cplx s = a0 + a1;
  for (std::size_t i = n2; i < n; ++i) s = s + cmul1(std::conj(x[i]), y[i]);
  return s;
}

}  // namespace weylcal::kernels::detail
