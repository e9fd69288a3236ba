#include "weylcal/kernels.hpp"
#include "weylcal/kernels_detail.hpp"

#include <immintrin.h>

// AVX2 variants. Arithmetic mirrors the scalar reference exactly: the complex
// product is mul/mul/addsub (never FMA), reductions accumulate 4 double lanes
// (2 complex lanes) in the same order and combine through the same tree, and
// all tails reuse the scalar helpers from kernels_detail.hpp.

namespace weylcal::kernels {
namespace {

using detail::cmul1;
using detail::kBlockDoubles;

inline __m256d cmul_v(__m256d va, __m256d vb) {
  __m256d vbr = _mm256_movedup_pd(vb);        // (br0,br0,br1,br1)
  __m256d vbi = _mm256_permute_pd(vb, 0xF);   // (bi0,bi0,bi1,bi1)
  __m256d vas = _mm256_permute_pd(va, 0x5);   // (ai0,ar0,ai1,ar1)
  __m256d t1 = _mm256_mul_pd(va, vbr);
  __m256d t2 = _mm256_mul_pd(vas, vbi);
  return _mm256_addsub_pd(t1, t2);  // (ar*br-ai*bi, ai*br+ar*bi)
}

void cmul_v2(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i), cmul_v(va, vb));
  }
  for (std::size_t i = n2; i < n; ++i) dst[i] = cmul1(a[i], b[i]);
}

void cmul_add_v2(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    __m256d vd = _mm256_loadu_pd(reinterpret_cast<double*>(dst + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i),
                     _mm256_add_pd(vd, cmul_v(va, vb)));
  }
  for (std::size_t i = n2; i < n; ++i) dst[i] = dst[i] + cmul1(a[i], b[i]);
}

void scale_v2(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
  __m256d valpha = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&alpha));
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d vs = _mm256_loadu_pd(reinterpret_cast<const double*>(src + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i), cmul_v(vs, valpha));
  }
  for (std::size_t i = n2; i < n; ++i) dst[i] = cmul1(src[i], alpha);
}

void scale_add_v2(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
  __m256d valpha = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&alpha));
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d vs = _mm256_loadu_pd(reinterpret_cast<const double*>(src + i));
    __m256d vd = _mm256_loadu_pd(reinterpret_cast<double*>(dst + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i),
                     _mm256_add_pd(vd, cmul_v(vs, valpha)));
  }
  for (std::size_t i = n2; i < n; ++i) dst[i] = dst[i] + cmul1(src[i], alpha);
}

inline double hsum4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d vs = _mm_add_pd(lo, hi);  // (l0+l2, l1+l3)
  return _mm_cvtsd_f64(vs) + _mm_cvtsd_f64(_mm_unpackhi_pd(vs, vs));
}

inline cplx hsum_c(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d vs = _mm_add_pd(lo, hi);
  return cplx(_mm_cvtsd_f64(vs), _mm_cvtsd_f64(_mm_unpackhi_pd(vs, vs)));
}

double block_sum_abs2_v(const double* xd, std::size_t nd) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t n4 = nd & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d v = _mm256_loadu_pd(xd + i);
    vacc = _mm256_add_pd(vacc, _mm256_mul_pd(v, v));
  }
  double s = hsum4(vacc);
  for (std::size_t i = n4; i < nd; ++i) s = s + xd[i] * xd[i];
  return s;
}

double sum_abs2_v2(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  std::size_t nd = 2 * n;
  std::vector<double> parts;
  parts.reserve(nd / kBlockDoubles + 1);
  for (std::size_t off = 0; off < nd; off += kBlockDoubles) {
    std::size_t len = std::min(kBlockDoubles, nd - off);
    parts.push_back(block_sum_abs2_v(xd + off, len));
  }
  return detail::tree_combine(parts);
}

cplx block_dotu_v(const cplx* x, const cplx* y, std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    vacc = _mm256_add_pd(vacc, cmul_v(vx, vy));
  }
  cplx s = hsum_c(vacc);
  for (std::size_t i = n2; i < n; ++i) s = s + cmul1(x[i], y[i]);
  return s;
}

cplx block_dotc_v(const cplx* x, const cplx* y, std::size_t n) {
  const __m256d neg_im = _mm256_castsi256_pd(_mm256_set_epi64x(
      0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
  __m256d vacc = _mm256_setzero_pd();
  std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    vacc = _mm256_add_pd(vacc, cmul_v(_mm256_xor_pd(vx, neg_im), vy));
  }
  cplx s = hsum_c(vacc);
  for (std::size_t i = n2; i < n; ++i) s = s + cmul1(std::conj(x[i]), y[i]);
  return s;
}

cplx dotu_v2(const cplx* x, const cplx* y, std::size_t n) {
  std::size_t blk = kBlockDoubles / 2;
  std::vector<cplx> parts;
  parts.reserve(n / blk + 1);
  for (std::size_t off = 0; off < n; off += blk) {
    std::size_t len = std::min(blk, n - off);
    parts.push_back(block_dotu_v(x + off, y + off, len));
  }
  return detail::tree_combine_c(parts);
}

cplx dotc_v2(const cplx* x, const cplx* y, std::size_t n) {
  std::size_t blk = kBlockDoubles / 2;
  std::vector<cplx> parts;
  parts.reserve(n / blk + 1);
  for (std::size_t off = 0; off < n; off += blk) {
    std::size_t len = std::min(blk, n - off);
    parts.push_back(block_dotc_v(x + off, y + off, len));
  }
  return detail::tree_combine_c(parts);
}

double block_sum_v(const double* x, std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x + i));
  }
  double s = hsum4(vacc);
  for (std::size_t i = n4; i < n; ++i) s = s + x[i];
  return s;
}

double sum_v2(const double* x, std::size_t n) {
  std::vector<double> parts;
  parts.reserve(n / kBlockDoubles + 1);
  for (std::size_t off = 0; off < n; off += kBlockDoubles) {
    std::size_t len = std::min(kBlockDoubles, n - off);
    parts.push_back(block_sum_v(x + off, len));
  }
  return detail::tree_combine(parts);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {"avx2",     cmul_v2, cmul_add_v2, scale_v2, scale_add_v2,
                          sum_abs2_v2, dotu_v2, dotc_v2,     sum_v2};
  return ops;
}

}  // namespace weylcal::kernels
