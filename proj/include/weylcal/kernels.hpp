#pragma once
#include <complex>
#include <cstddef>
#include <string>

namespace weylcal::kernels {

using cplx = std::complex<double>;

// Hot-loop primitives. Each entry has a scalar reference implementation and,
// on x86-64, an AVX2 variant. The two are bit-identical by construction: same
// multiply/add sequence per element, no FMA, and one shared reduction tree
// (4 double lanes / 2 complex lanes per block, pairwise combine of block
// partials). Equivalence is asserted exactly in the test suite.
struct Ops {
  const char* name;
  void (*cmul)(cplx* dst, const cplx* a, const cplx* b, std::size_t n);      // dst[i] = a[i]*b[i]
  void (*cmul_add)(cplx* dst, const cplx* a, const cplx* b, std::size_t n);  // dst[i] += a[i]*b[i]
  void (*scale)(cplx* dst, cplx alpha, const cplx* src, std::size_t n);      // dst[i] = alpha*src[i]
  void (*scale_add)(cplx* dst, cplx alpha, const cplx* src, std::size_t n);  // dst[i] += alpha*src[i]
  double (*sum_abs2)(const cplx* x, std::size_t n);
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);  // sum x[i]*y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);  // sum conj(x[i])*y[i]
  double (*sum)(const double* x, std::size_t n);
};

const Ops& scalar_ops();
#if WEYLCAL_HAVE_AVX2
const Ops& avx2_ops();
#endif

bool avx2_supported();

// Table selected at startup from WEYLCAL_KERNEL=scalar|avx2|auto (default auto:
// AVX2 when the CPU has it). force() overrides, for tests.
const Ops& active();
void force(const std::string& which);

}  // namespace weylcal::kernels
