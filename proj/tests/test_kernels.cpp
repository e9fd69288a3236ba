#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylcal/kernels.hpp"

#include <cstring>
#include <random>
#include <vector>

using weylcal::kernels::cplx;
using weylcal::kernels::Ops;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(u(rng), u(rng));
  return v;
}

bool bits_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0);
}

bool bits_equal(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }
bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

const std::size_t kLens[] = {0, 1, 2, 3, 5, 17, 511, 512, 513, 1000, 1024, 1025, 4096, 9999};

}  // namespace

TEST_CASE("complex multiply matches exact integer arithmetic") {
  const Ops& ops = weylcal::kernels::scalar_ops();
  std::vector<cplx> a = {cplx(1, 2), cplx(-3, 4)};
  std::vector<cplx> b = {cplx(3, 4), cplx(2, -1)};
  std::vector<cplx> d(2);
  ops.cmul(d.data(), a.data(), b.data(), 2);
  CHECK(d[0] == cplx(-5, 10));
  CHECK(d[1] == cplx(-2, 11));
}

TEST_CASE("scale by i is an exact rotation") {
  const Ops& ops = weylcal::kernels::scalar_ops();
  auto x = random_vec(257, 11);
  std::vector<cplx> d(x.size());
  ops.scale(d.data(), cplx(0, 1), x.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(d[i].real() == -x[i].imag());
    CHECK(d[i].imag() == x[i].real());
  }
}

TEST_CASE("reductions agree with long double reference") {
  const Ops& ops = weylcal::kernels::scalar_ops();
  auto x = random_vec(4096, 21);
  auto y = random_vec(4096, 22);
  long double s2 = 0, dur = 0, dui = 0, dcr = 0, dci = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double xr = x[i].real(), xi = x[i].imag();
    long double yr = y[i].real(), yi = y[i].imag();
    s2 += xr * xr + xi * xi;
    dur += xr * yr - xi * yi;
    dui += xi * yr + xr * yi;
    dcr += xr * yr + xi * yi;
    dci += -xi * yr + xr * yi;
  }
  CHECK(ops.sum_abs2(x.data(), x.size()) ==
        doctest::Approx((double)s2).epsilon(1e-13));
  cplx du = ops.dotu(x.data(), y.data(), x.size());
  cplx dc = ops.dotc(x.data(), y.data(), x.size());
  CHECK(du.real() == doctest::Approx((double)dur).epsilon(1e-12));
  CHECK(du.imag() == doctest::Approx((double)dui).epsilon(1e-12));
  CHECK(dc.real() == doctest::Approx((double)dcr).epsilon(1e-12));
  CHECK(dc.imag() == doctest::Approx((double)dci).epsilon(1e-12));
}

TEST_CASE("avx2 variants are bit-identical to the scalar reference") {
  if (!weylcal::kernels::avx2_supported()) {
    MESSAGE("avx2 unavailable, skipping");
    return;
  }
#if WEYLCAL_HAVE_AVX2
  const Ops& s = weylcal::kernels::scalar_ops();
  const Ops& v = weylcal::kernels::avx2_ops();
  cplx alpha(0.7351, -1.4142);
  for (std::size_t n : kLens) {
    CAPTURE(n);
    auto a = random_vec(n, 100 + n);
    auto b = random_vec(n, 200 + n);
    std::vector<cplx> ds(n), dv(n);

    s.cmul(ds.data(), a.data(), b.data(), n);
    v.cmul(dv.data(), a.data(), b.data(), n);
    CHECK(bits_equal(ds, dv));

    auto es = random_vec(n, 300 + n);
    auto ev = es;
    s.cmul_add(es.data(), a.data(), b.data(), n);
    v.cmul_add(ev.data(), a.data(), b.data(), n);
    CHECK(bits_equal(es, ev));

    s.scale(ds.data(), alpha, a.data(), n);
    v.scale(dv.data(), alpha, a.data(), n);
    CHECK(bits_equal(ds, dv));

    es = random_vec(n, 400 + n);
    ev = es;
    s.scale_add(es.data(), alpha, a.data(), n);
    v.scale_add(ev.data(), alpha, a.data(), n);
    CHECK(bits_equal(es, ev));

    CHECK(bits_equal(s.sum_abs2(a.data(), n), v.sum_abs2(a.data(), n)));
    CHECK(bits_equal(s.dotu(a.data(), b.data(), n), v.dotu(a.data(), b.data(), n)));
    CHECK(bits_equal(s.dotc(a.data(), b.data(), n), v.dotc(a.data(), b.data(), n)));
    std::vector<double> ra(2 * n);
    std::memcpy(ra.data(), a.data(), 2 * n * sizeof(double));
    CHECK(bits_equal(s.sum(ra.data(), 2 * n), v.sum(ra.data(), 2 * n)));
  }
#endif
}

TEST_CASE("kernel selection can be forced") {
  weylcal::kernels::force("scalar");
  CHECK(std::string(weylcal::kernels::active().name) == "scalar");
  CHECK_THROWS(weylcal::kernels::force("sse9"));
  weylcal::kernels::force("auto");
  if (weylcal::kernels::avx2_supported())
    CHECK(std::string(weylcal::kernels::active().name) == "avx2");
  else
    CHECK(std::string(weylcal::kernels::active().name) == "scalar");
}
