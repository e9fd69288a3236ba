#include "weylcal/kernels.hpp"
#include "weylcal/kernels_detail.hpp"

namespace weylcal::kernels {
namespace {

using detail::cmul1;
using detail::kBlockDoubles;

void cmul_s(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = cmul1(a[i], b[i]);
}

void cmul_add_s(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + cmul1(a[i], b[i]);
}

void scale_s(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = cmul1(src[i], alpha);
}

void scale_add_s(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + cmul1(src[i], alpha);
}

double sum_abs2_s(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  std::size_t nd = 2 * n;
  std::vector<double> parts;
  parts.reserve(nd / kBlockDoubles + 1);
  for (std::size_t off = 0; off < nd; off += kBlockDoubles) {
    std::size_t len = std::min(kBlockDoubles, nd - off);
    parts.push_back(detail::block_sum_abs2(xd + off, len));
  }
  return detail::tree_combine(parts);
}

cplx dotu_s(const cplx* x, const cplx* y, std::size_t n) {
  std::size_t blk = kBlockDoubles / 2;
  std::vector<cplx> parts;
  parts.reserve(n / blk + 1);
  for (std::size_t off = 0; off < n; off += blk) {
    std::size_t len = std::min(blk, n - off);
    parts.push_back(detail::block_dotu(x + off, y + off, len));
  }
  return detail::tree_combine_c(parts);
}

cplx dotc_s(const cplx* x, const cplx* y, std::size_t n) {
  std::size_t blk = kBlockDoubles / 2;
  std::vector<cplx> parts;
  parts.reserve(n / blk + 1);
  for (std::size_t off = 0; off < n; off += blk) {
    std::size_t len = std::min(blk, n - off);
    parts.push_back(detail::block_dotc(x + off, y + off, len));
  }
  return detail::tree_combine_c(parts);
}

double sum_s(const double* x, std::size_t n) {
  std::vector<double> parts;
  parts.reserve(n / kBlockDoubles + 1);
  for (std::size_t off = 0; off < n; off += kBlockDoubles) {
    std::size_t len = std::min(kBlockDoubles, n - off);
    parts.push_back(detail::block_sum(x + off, len));
  }
  return detail::tree_combine(parts);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {"scalar", cmul_s,     cmul_add_s, scale_s, scale_add_s,
                          sum_abs2_s, dotu_s,   dotc_s,     sum_s};
  return ops;
}

}  // namespace weylcal::kernels
