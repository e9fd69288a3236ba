#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylcal/fft.hpp"
#include "weylcal/grid.hpp"
#include "weylcal/interp.hpp"
#include "weylcal/mellin.hpp"
#include "weylcal/sphere.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>

using namespace weylcal;

namespace {

constexpr double kPi = std::numbers::pi;

SampledField random_field(GridSpec spec, std::uint64_t seed) {
  SampledField f(std::move(spec));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : f.values) v = cplx(u(rng), u(rng));
  return f;
}

double max_abs_diff(const SampledField& a, const SampledField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

AxisSpec self_dual_axis(std::size_t N) {
  return AxisSpec{std::sqrt(static_cast<double>(N)) / 2.0, N};
}

}  // namespace

TEST_CASE("axis and grid bookkeeping") {
  AxisSpec ax{4.0, 64};
  CHECK(ax.h() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(ax.node(32) == 0.0);
  CHECK(axes_close(ax.dual().dual(), ax));
  AxisSpec odd{3.7, 48};
  CHECK(axes_close(odd.dual().dual(), odd));

  GridSpec g({AxisSpec{4.0, 64}, AxisSpec{3.0, 48}});
  CHECK(g.total() == 64 * 48);
  CHECK(g.strides() == std::vector<std::size_t>{48, 1});
  CHECK(g.weight() == doctest::Approx(0.125 * 0.125).epsilon(1e-15));
  auto c = g.coords({0, 0});
  CHECK(c[0] == -4.0);
  CHECK(c[1] == -3.0);

  std::vector<std::size_t> idx(2, 0);
  std::size_t count = 0;
  do {
    ++count;
  } while (next_index(idx, g));
  CHECK(count == g.total());

  CHECK_THROWS(GridSpec({AxisSpec{4.0, 3}}));
  CHECK_THROWS(GridSpec({AxisSpec{-1.0, 8}}));
}

TEST_CASE("plan matches the direct transform sum at a composite length") {
  std::size_t n = 48;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(u(rng), u(rng));
  std::vector<cplx> line = x;
  DftPlan plan(n, -1);
  plan.apply(line.data());
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += x[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(j * k) / static_cast<double>(n));
    CHECK(std::abs(acc - line[k]) < 1e-11);
  }
}

TEST_CASE("unit gaussian is a fixed point of the transform on its matched axis") {
  GridSpec g({self_dual_axis(128)});
  SampledField f(g);
  for (std::size_t k = 0; k < 128; ++k) {
    double x = g.axes[0].node(k);
    f.values[k] = std::exp(-kPi * x * x);
  }
  SampledField F = fourier_axis(f, 0, FourierDirection::Forward);
  CHECK(grids_close(F.spec, g));
  CHECK(max_abs_diff(F, f) < 1e-12);
}

TEST_CASE("transform round trip and norm preservation are exact at grid level") {
  for (auto axes : {std::vector<AxisSpec>{{3.7, 128}},
                    std::vector<AxisSpec>{{5.0, 96}},
                    std::vector<AxisSpec>{{4.0, 64}, {3.0, 48}}}) {
    GridSpec g(axes);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SampledField f = random_field(g, 1000 + seed);
      SampledField F = fourier_all(f, FourierDirection::Forward);
      CHECK(std::abs(F.norm2() - f.norm2()) < 1e-12 * f.norm2());
      SampledField back = fourier_all(F, FourierDirection::Inverse);
      REQUIRE(grids_close(back.spec, g));
      CHECK(max_abs_diff(back, f) < 1e-12);
    }
  }
}

TEST_CASE("symplectic transform: involution, radial fixed point, factorization") {
  GridSpec g({AxisSpec{3.0, 48}, AxisSpec{3.0, 48}});
  SampledField f = random_field(g, 42);
  SampledField once = symplectic_fourier(f);
  SampledField twice = symplectic_fourier(once);
  CHECK(max_abs_diff(twice, f) < 1e-10);

  // factorization: full transform followed by the exact index permutation
  SampledField full = fourier_all(f, FourierDirection::Forward);
  AffineMap J;
  J.M = {{0.0, -1.0}, {1.0, 0.0}};
  J.c = {0.0, 0.0};
  SampledField perm = resample_affine(full, J, InterpMethod::ExactIndex, Boundary::Wrap);
  REQUIRE(once.values.size() == perm.values.size());
  CHECK(std::memcmp(once.values.data(), perm.values.data(),
                    once.values.size() * sizeof(cplx)) == 0);

  GridSpec sd({self_dual_axis(64), self_dual_axis(64)});
  SampledField rad(sd);
  std::vector<std::size_t> idx(2, 0);
  std::size_t dof = 0;
  do {
    auto c = sd.coords(idx);
    rad.values[dof++] = std::exp(-kPi * (c[0] * c[0] + c[1] * c[1]));
  } while (next_index(idx, sd));
  SampledField rad2 = symplectic_fourier(rad);
  CHECK(max_abs_diff(rad2, rad) < 1e-12);

  CHECK_THROWS(symplectic_fourier(random_field(GridSpec({AxisSpec{2.0, 16}}), 1)));
}

TEST_CASE("exact-index resampling: permutation semantics and refusals") {
  GridSpec g({AxisSpec{5.0, 40}});
  SampledField f = random_field(g, 9);
  double h = g.axes[0].h();

  SampledField shifted = resample_affine(f, AffineMap::translation({3.0 * h}),
                                         InterpMethod::ExactIndex, Boundary::Zero);
  for (std::size_t k = 0; k < 40; ++k) {
    cplx want = (k + 3 < 40) ? f.values[k + 3] : cplx{0.0, 0.0};
    CHECK(shifted.values[k] == want);
  }
  SampledField wrapped = resample_affine(f, AffineMap::translation({3.0 * h}),
                                         InterpMethod::ExactIndex, Boundary::Wrap);
  CHECK(wrapped.values[39] == f.values[2]);

  CHECK_THROWS(resample_affine(f, AffineMap::translation({0.5 * h}), InterpMethod::ExactIndex));
  AffineMap bad = AffineMap::identity(1);
  bad.M[0][0] = 0.0;
  CHECK_THROWS(resample_affine(f, bad, InterpMethod::ExactIndex));
  GridSpec g2({AxisSpec{5.0, 40}, AxisSpec{5.0, 40}});
  AffineMap dense = AffineMap::identity(2);
  dense.M[0][1] = 0.5;
  CHECK_THROWS(resample_affine(random_field(g2, 3), dense, InterpMethod::Cubic));

  // index permutations commute with pointwise scaling bit for bit
  cplx alpha(0.37, -1.2);
  SampledField fs = f;
  for (auto& v : fs.values) v = alpha * v;
  SampledField a = resample_affine(fs, AffineMap::translation({3.0 * h}),
                                   InterpMethod::ExactIndex, Boundary::Wrap);
  SampledField b = wrapped;
  for (auto& v : b.values) v = alpha * v;
  CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(cplx)) == 0);
}

TEST_CASE("polynomial-order interpolation reproduces samples and smooth shifts") {
  GridSpec g({AxisSpec{6.0, 128}});
  SampledField f(g);
  for (std::size_t k = 0; k < 128; ++k) {
    double x = g.axes[0].node(k);
    f.values[k] = cplx(std::exp(-kPi * x * x), 0.3 * std::exp(-0.5 * x * x));
  }
  for (std::size_t k : {0u, 1u, 17u, 64u, 127u}) {
    double p = g.axes[0].node(k);
    CHECK(interp_at(f, &p, InterpMethod::Cubic) == f.values[k]);
    CHECK(interp_at(f, &p, InterpMethod::Lagrange6) == f.values[k]);
  }
  double h = g.axes[0].h();
  double s0 = h / 3.0;
  SampledField c3 = resample_affine(f, AffineMap::translation({s0}), InterpMethod::Cubic);
  SampledField l6 = resample_affine(f, AffineMap::translation({s0}), InterpMethod::Lagrange6);
  double errc = 0.0, errl = 0.0;
  for (std::size_t k = 0; k < 128; ++k) {
    double x = g.axes[0].node(k) + s0;
    cplx want(std::exp(-kPi * x * x), 0.3 * std::exp(-0.5 * x * x));
    if (std::abs(x) > 6.0 - 3.0 * h) continue;
    errc = std::max(errc, std::abs(c3.values[k] - want));
    errl = std::max(errl, std::abs(l6.values[k] - want));
  }
  CHECK(errc < 5e-3);
  CHECK(errl < 1e-5);
}

TEST_CASE("bandlimited resampling is exact for representable targets") {
  GridSpec g({self_dual_axis(64)});
  double L = g.axes[0].L, h = g.axes[0].h();
  SampledField f(g);
  for (std::size_t k = 0; k < 64; ++k) {
    double x = g.axes[0].node(k);
    f.values[k] = std::exp(-kPi * x * x);
  }
  SampledField same = resample_affine(f, AffineMap::diagonal({1.0}, {1e-300}),
                                      InterpMethod::Bandlimited);
  CHECK(max_abs_diff(same, f) < 1e-12);

  SampledField half = resample_affine(f, AffineMap::translation({0.5 * h}),
                                      InterpMethod::Bandlimited);
  double err = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    double x = g.axes[0].node(k) + 0.5 * h;
    if (std::abs(x) >= L) continue;
    err = std::max(err, std::abs(half.values[k] - std::exp(-kPi * x * x)));
  }
  CHECK(err < 1e-10);

  SampledField dil = resample_affine(f, AffineMap::diagonal({0.5}, {0.0}),
                                     InterpMethod::Bandlimited);
  err = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    double x = 0.5 * g.axes[0].node(k);
    err = std::max(err, std::abs(dil.values[k] - std::exp(-kPi * x * x)));
  }
  CHECK(err < 1e-10);

  AffineMap swap2 = AffineMap::monomial({1, 0}, {1.0, 1.0}, {0.0, 0.0});
  GridSpec g2({self_dual_axis(64), self_dual_axis(64)});
  CHECK_THROWS(resample_affine(random_field(g2, 5), swap2, InterpMethod::Bandlimited));
}

TEST_CASE("gauss-legendre rule and sphere quadratures") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  double s0 = 0.0, s8 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    s0 += w[i];
    s8 += w[i] * std::pow(x[i], 8.0);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

  SphereGrid c = circle_grid(16);
  double area = 0.0;
  for (double wi : c.weights) area += wi;
  CHECK(area == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  cplx m22 = 0.0, m20 = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    cplx z(c.nodes[2 * i], c.nodes[2 * i + 1]);
    m22 += c.weights[i] * z * z * std::conj(z * z);
    m20 += c.weights[i] * z * z;
  }
  CHECK(std::abs(m22 - sphere_monomial_moment(1, {2}, {2})) < 1e-13);
  CHECK(std::abs(m20) < 1e-13);

  SphereGrid t = torus_grid(8, 8, 8);
  area = 0.0;
  for (double wi : t.weights) area += wi;
  CHECK(area == doctest::Approx(t.area()).epsilon(1e-13));
  CHECK(t.area() == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));

  auto moment = [&](std::size_t p1, std::size_t p2, std::size_t q1, std::size_t q2) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double* X = t.node(i);
      cplx z1(X[0], X[2]), z2(X[1], X[3]);
      cplx v = 1.0;
      for (std::size_t a = 0; a < p1; ++a) v *= z1;
      for (std::size_t a = 0; a < p2; ++a) v *= z2;
      for (std::size_t a = 0; a < q1; ++a) v *= std::conj(z1);
      for (std::size_t a = 0; a < q2; ++a) v *= std::conj(z2);
      acc += t.weights[i] * v;
    }
    return acc;
  };
  for (std::size_t p1 = 0; p1 <= 3; ++p1)
    for (std::size_t p2 = 0; p2 + p1 <= 3; ++p2)
      for (std::size_t q1 = 0; q1 <= 3; ++q1)
        for (std::size_t q2 = 0; q2 + q1 <= 3; ++q2) {
          cplx got = moment(p1, p2, q1, q2);
          double want = sphere_monomial_moment(2, {p1, p2}, {q1, q2});
          CHECK(std::abs(got - want) < 1e-12);
        }

  for (std::size_t i = 0; i < t.size(); ++i) {
    const double* X = t.node(i);
    const double* Y = t.node(t.antipode[i]);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(X[j] + Y[j]) < 1e-13);
    CHECK(t.weights[i] == t.weights[t.antipode[i]]);
  }
}

namespace {

SampledField radial_power_peak(const GridSpec& g, double lam0, double s0, double sigma) {
  SampledField f(g);
  std::vector<std::size_t> idx(2, 0);
  std::size_t dof = 0;
  do {
    auto c = g.coords(idx);
    double r = std::hypot(c[0], c[1]);
    if (r == 0.0) {
      f.values[dof++] = 0.0;
    } else {
      double s = std::log(r);
      double bump = std::exp(-(s - s0) * (s - s0) / (2.0 * sigma * sigma));
      double th = std::atan2(c[1], c[0]);
      f.values[dof++] = std::polar(bump / r, -lam0 * s + th);
    }
  } while (next_index(idx, g));
  return f;
}

}  // namespace

TEST_CASE("radial restriction: gaussian value, peak location, parity, norm identity") {
  GridSpec g({AxisSpec{8.0, 512}, AxisSpec{8.0, 512}});
  SphereGrid circ = circle_grid(64);

  SampledField gauss(g);
  std::vector<std::size_t> idx(2, 0);
  std::size_t dof = 0;
  do {
    auto c = g.coords(idx);
    gauss.values[dof++] = std::exp(-kPi * (c[0] * c[0] + c[1] * c[1]));
  } while (next_index(idx, g));
  MellinTransform mg(gauss, circ);
  // ∫_0^∞ e^{-π t^2} dt = 1/2, independently of the ray
  auto plus = mg.plus_part(0.0);
  for (const cplx& v : plus) CHECK(std::abs(v - 0.5) < 1e-7);
  // radial input has no odd component
  CHECK(mg.norm2_integrand(0.0, 1) < 1e-20);

  double lam0 = 1.0;
  SampledField f = radial_power_peak(g, lam0, -0.5, 0.5);
  MellinTransform mt(f, circ);
  SimpsonLattice lat = simpson_lattice(-40.0, 40.0, 321);

  std::size_t kmax = 0;
  double vmax = -1.0, vodd_total = 0.0, veven_max = 0.0;
  for (std::size_t k = 0; k < lat.x.size(); ++k) {
    double v = mt.norm2_integrand(lat.x[k], 1);
    vodd_total += lat.w[k] * v;
    if (v > vmax) {
      vmax = v;
      kmax = k;
    }
    veven_max = std::max(veven_max, mt.norm2_integrand(lat.x[k], 0));
  }
  CHECK(lat.x[kmax] == 1.0);
  CHECK(veven_max < 1e-6 * vmax);

  double total = mellin_plancherel_total(mt, lat);
  CHECK(std::abs(total - f.norm2()) < 1e-3 * f.norm2());
  // the even sector carries nothing, so the δ=1 integral alone must match too
  CHECK(std::abs(2.0 * kPi * vodd_total - f.norm2()) < 1e-3 * f.norm2());

  // linearity down to rounding
  SampledField mix(g);
  cplx a(2.0, 0.0), b(0.0, 3.0);
  for (std::size_t i = 0; i < mix.values.size(); ++i)
    mix.values[i] = a * f.values[i] + b * gauss.values[i];
  MellinTransform mm(mix, circ);
  auto pf = mt.plus_part(2.5);
  auto pg = mg.plus_part(2.5);
  auto pm = mm.plus_part(2.5);
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < pm.size(); ++i) {
    scale = std::max(scale, std::abs(pm[i]));
    diff = std::max(diff, std::abs(pm[i] - (a * pf[i] + b * pg[i])));
  }
  CHECK(diff < 1e-12 * scale);

  // a field that does not decay by the outer cutoff must be rejected
  SampledField ones(g);
  for (auto& v : ones.values) v = 1.0;
  CHECK_THROWS_AS(MellinTransform(ones, circ), NumericalGuard);
}

TEST_CASE("field files round trip bit for bit") {
  GridSpec g({AxisSpec{2.5, 16}, AxisSpec{1.0, 8}});
  SampledField f = random_field(g, 77);
  save_field(f, "phasegrid_io_tmp");
  SampledField back = load_field("phasegrid_io_tmp");
  REQUIRE(back.spec == f.spec);
  CHECK(std::memcmp(back.values.data(), f.values.data(), f.values.size() * sizeof(cplx)) == 0);
  std::remove("phasegrid_io_tmp.json");
  std::remove("phasegrid_io_tmp.bin");
}
