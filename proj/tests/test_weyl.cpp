#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylcal/fft.hpp"
#include "weylcal/testfields.hpp"
#include "weylcal/weyl.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace weylcal;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_l2(const SampledField& got, const SampledField& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.values.size(); ++i) {
    num += std::norm(got.values[i] - want.values[i]);
    den += std::norm(want.values[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// Gaussian taper along selected axes only; the remaining axes are untouched,
// so spectra along them stay exactly band-limited.
SampledField window_axes(const SampledField& in, const std::vector<std::size_t>& which,
                         double frac) {
  SampledField f = in;
  auto st = f.spec.strides();
  for (std::size_t t = 0; t < f.values.size(); ++t) {
    double w = 1.0;
    for (std::size_t ax : which) {
      double x = f.spec.axes[ax].node((t / st[ax]) % f.spec.axes[ax].N);
      double s = frac * f.spec.axes[ax].L;
      w *= std::exp(-kPi * x * x / (s * s));
    }
    f.values[t] *= w;
  }
  return f;
}

SampledField reflect(const SampledField& u) {
  std::vector<double> sc(u.spec.rank(), -1.0), sh(u.spec.rank(), 0.0);
  return resample_affine(u, AffineMap::diagonal(sc, sh), InterpMethod::ExactIndex,
                         Boundary::Wrap);
}

// Symbols the canonical grid represents faithfully: band-limited fields with
// tapered x axes, pushed once through quantize/dequantize.
SampledField canonical_symbol(const GridSpec& cfg, const GridSpec& sym, std::uint64_t seed) {
  TestFieldOptions o;
  o.seed = seed;
  std::vector<std::size_t> xaxes(cfg.rank());
  for (std::size_t a = 0; a < cfg.rank(); ++a) xaxes[a] = a;
  SampledField raw = window_axes(random_band_field(sym, o), xaxes, 1.0 / 6.0);
  return op_dequantize(op_quantize(WeylSymbol{raw, std::nullopt})).field;
}

}  // namespace

TEST_CASE("quantization: constants, coordinate multiplication, traces, identity symbol") {
  GridSpec cfg({AxisSpec{4.0, 64}});
  GridSpec sym = canonical_symbol_grid(cfg);
  double h = cfg.axes[0].h();

  SampledField one(sym);
  for (auto& v : one.values) v = 1.0;
  HSOperator T1 = op_quantize(WeylSymbol{one, std::nullopt});
  CHECK(grids_close(T1.config, cfg));
  CHECK((T1.kernel - hs_identity(cfg).kernel).norm() * h < 1e-10);

  SampledField x1(sym);
  {
    auto st = sym.strides();
    for (std::size_t t = 0; t < x1.values.size(); ++t)
      x1.values[t] = sym.axes[0].node((t / st[0]) % sym.axes[0].N);
  }
  HSOperator Tx = op_quantize(WeylSymbol{x1, std::nullopt});

  for (int k = 0; k < 10; ++k) {
    TestFieldOptions o;
    o.seed = 100 + k;
    SampledField u = random_band_field(cfg, o);
    CHECK(rel_l2(T1.apply(u), u) < 1e-10);
    SampledField xu = u;
    for (std::size_t j = 0; j < 64; ++j) xu.values[j] *= cfg.axes[0].node(j);
    CHECK(rel_l2(Tx.apply(u), xu) < 1e-10);
  }

  // composing with the identity operator leaves the kernel alone
  CHECK((hs_compose(T1, Tx).kernel - Tx.kernel).norm() < 1e-12 * Tx.kernel.norm());

  // the trace recovers the phase-space integral of the symbol
  for (int k = 0; k < 10; ++k) {
    TestFieldOptions o;
    o.seed = 200 + k;
    o.band = 0.3;
    o.window = 1.0 / 6.0;
    SampledField S = random_band_field(sym, o);
    cplx integral = 0.0;
    for (const auto& v : S.values) integral += v;
    integral *= sym.weight();
    cplx tr = op_quantize(WeylSymbol{S, std::nullopt}).trace();
    CHECK(std::abs(tr - integral) < 1e-6 * std::abs(integral));
  }

  // dequantizing the identity operator returns the constant symbol 1
  WeylSymbol back = op_dequantize(hs_identity(cfg));
  double dev = 0.0;
  for (const auto& v : back.field.values) dev = std::max(dev, std::abs(v - 1.0));
  CHECK(dev < 1e-12);

  // two configuration axes exercise the multi-axis gather
  GridSpec cfg2({AxisSpec{2.0, 8}, AxisSpec{2.0, 8}});
  GridSpec sym2 = canonical_symbol_grid(cfg2);
  SampledField one2(sym2);
  for (auto& v : one2.values) v = 1.0;
  HSOperator T2 = op_quantize(WeylSymbol{one2, std::nullopt});
  TestFieldOptions o2;
  o2.seed = 321;
  SampledField u2 = random_band_field(cfg2, o2);
  CHECK(rel_l2(T2.apply(u2), u2) < 1e-10);

  CHECK_THROWS_AS(op_quantize(WeylSymbol{one, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(op_quantize(WeylSymbol{u2, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(T1.apply(u2), std::invalid_argument);
}

TEST_CASE("dequantization inverts quantization and preserves the norm") {
  GridSpec cfg({AxisSpec{4.0, 64}});
  GridSpec sym = canonical_symbol_grid(cfg);

  for (int k = 0; k < 20; ++k) {
    SampledField S = canonical_symbol(cfg, sym, 400 + k);
    HSOperator T = op_quantize(WeylSymbol{S, std::nullopt});
    SampledField back = op_dequantize(T).field;
    CHECK(rel_l2(back, S) < 1e-10);
    CHECK(std::abs(T.hs_norm() - S.norm()) < 1e-10 * S.norm());
  }

  // the reverse round trip and the isometry hold for arbitrary kernels
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    HSOperator T;
    T.config = cfg;
    T.kernel.resize(64, 64);
    for (Eigen::Index i = 0; i < 64; ++i)
      for (Eigen::Index j = 0; j < 64; ++j) T.kernel(i, j) = cplx{u(rng), u(rng)};
    WeylSymbol S = op_dequantize(T);
    CHECK(std::abs(T.hs_norm() - S.field.norm()) < 1e-12 * T.hs_norm());
    HSOperator R = op_quantize(S);
    CHECK((R.kernel - T.kernel).norm() < 1e-12 * T.kernel.norm());
  }

  // rank-one kernel built from two Gaussian wave packets
  HSOperator P;
  P.config = cfg;
  P.kernel.resize(64, 64);
  for (Eigen::Index i = 0; i < 64; ++i)
    for (Eigen::Index j = 0; j < 64; ++j) {
      double x = cfg.axes[0].node(static_cast<std::size_t>(i));
      double y = cfg.axes[0].node(static_cast<std::size_t>(j));
      cplx uv = std::exp(cplx{-kPi * x * x, 0.0});
      cplx vv = std::exp(cplx{-kPi * (y - 0.5) * (y - 0.5), 2.0 * kPi * 0.25 * y});
      P.kernel(i, j) = uv * std::conj(vv);
    }
  WeylSymbol W = op_dequantize(P);
  CHECK(std::abs(P.hs_norm() - W.field.norm()) < 1e-10 * P.hs_norm());
  CHECK((op_quantize(W).kernel - P.kernel).norm() < 1e-10 * P.kernel.norm());
}

TEST_CASE("daggers: involution, Fourier-side swap, operator identities, parity split") {
  GridSpec cfg({AxisSpec{4.0, 64}});
  GridSpec sq = square_symbol_grid(cfg);

  // the interpolated daggers below stretch one frequency axis by 2, so the
  // draw keeps its spectrum well inside half of Nyquist
  TestFieldOptions so;
  so.seed = 606;
  so.band = 0.25;
  SampledField S0 = window_axes(random_band_field(sq, so), {0, 1}, 1.0 / 3.0);
  WeylSymbol S{S0, std::nullopt};

  for (auto side : {DaggerSide::Left, DaggerSide::Right}) {
    WeylSymbol twice = dagger(dagger(S, 2.0, side), 2.0, side);
    CHECK(rel_l2(twice.field, S.field) < 1e-12);
  }

  // at rho = 2 the right dagger is the plain swap of the two Fourier-side axes
  {
    SampledField F = fourier_axis(S0, 1, FourierDirection::Forward);
    SampledField G(F.spec);
    for (std::size_t p = 0; p < 128; ++p)
      for (std::size_t q = 0; q < 128; ++q) G.values[p * 128 + q] = F.values[q * 128 + p];
    SampledField manual = fourier_axis(G, 1, FourierDirection::Inverse);
    CHECK(rel_l2(dagger(S, 2.0, DaggerSide::Right).field, manual) < 1e-12);
  }

  // operator level at rho = 2
  for (int k = 0; k < 10; ++k) {
    TestFieldOptions si;
    si.seed = 700 + k;
    WeylSymbol Sk{window_axes(random_band_field(sq, si), {0, 1}, 1.0 / 6.0), std::nullopt};
    TestFieldOptions ui;
    ui.seed = 800 + k;
    ui.window = 0.2;
    SampledField u = random_band_field(cfg, ui);
    HSOperator T = op_quantize(Sk, 2.0);
    SampledField Tu = T.apply(u);
    CHECK(rel_l2(op_quantize(dagger(Sk, 2.0, DaggerSide::Right), 2.0).apply(u), reflect(Tu)) <
          1e-8);
    CHECK(rel_l2(op_quantize(dagger(Sk, 2.0, DaggerSide::Left), 2.0).apply(u),
                 T.apply(reflect(u))) < 1e-8);
  }

  // away from rho = 2 the maps interpolate; the involution still closes
  for (double rho : {1.0, 3.0}) {
    WeylSymbol twice = dagger(dagger(S, rho, DaggerSide::Right), rho, DaggerSide::Right);
    CHECK(rel_l2(twice.field, S.field) < 1e-3);
  }

  auto [Sp, Sm] = parity_split(S, 2.0);
  CHECK(rel_l2(dagger(Sp, 2.0, DaggerSide::Right).field, Sp.field) < 1e-12);
  {
    SampledField neg = Sm.field;
    for (auto& v : neg.values) v = -v;
    CHECK(rel_l2(dagger(Sm, 2.0, DaggerSide::Right).field, neg) < 1e-12);
  }
  {
    SampledField sum = Sp.field;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += Sm.field.values[i];
    CHECK(rel_l2(sum, S.field) < 1e-14);
  }
  CHECK(std::abs(Sp.field.inner(Sm.field)) < 1e-10 * S.field.norm2());

  // the even half quantizes to an operator with even range
  HSOperator Tp = op_quantize(Sp, 2.0);
  for (int k = 0; k < 5; ++k) {
    TestFieldOptions ui;
    ui.seed = 900 + k;
    ui.window = 0.2;
    SampledField v = Tp.apply(random_band_field(cfg, ui));
    SampledField vr = reflect(v);
    double odd = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i)
      odd += std::norm(0.5 * (v.values[i] - vr.values[i]));
    CHECK(std::sqrt(odd) < 1e-8 * v.norm());
  }

  // a swap-invariant symbol has no odd part
  {
    SampledField D = dagger(S, 2.0, DaggerSide::Right).field;
    SampledField even = S.field;
    for (std::size_t i = 0; i < even.values.size(); ++i)
      even.values[i] = 0.5 * (even.values[i] + D.values[i]);
    auto [Ep, Em] = parity_split(WeylSymbol{even, std::nullopt}, 2.0);
    CHECK(Em.field.norm() < 1e-12 * Ep.field.norm());
  }

  CHECK_THROWS_AS(dagger(S, 0.0, DaggerSide::Right), std::invalid_argument);
}

TEST_CASE("covariance residuals vanish to grid precision for all four identities") {
  CovarianceParams p;
  for (auto tag : {CovarianceTag::HeisenbergCovariance, CovarianceTag::MetaplecticGenerator,
                   CovarianceTag::JacobiRho, CovarianceTag::FtConjugation}) {
    CheckReport r = covariance_residual(tag, p, 4, 20260815);
    CHECK(r.suite == "weyl.covariance");
    CHECK(r.checks.size() == 1);
    CHECK(r.checks[0].value < 1e-6);
    CHECK(r.passed());
  }

  // the degenerate group element reproduces the operator bit for bit
  CheckReport rid = covariance_residual(CovarianceTag::HeisenbergCovariance, p, 1, 7);
  CHECK(rid.checks[0].value == 0.0);

  CHECK_THROWS_AS(covariance_residual(CovarianceTag::JacobiRho, p, 0, 1), std::invalid_argument);
}

TEST_CASE("covariance reports are reproducible for a fixed seed") {
  CovarianceParams p;
  CheckReport a = covariance_residual(CovarianceTag::JacobiRho, p, 2, 99);
  CheckReport b = covariance_residual(CovarianceTag::JacobiRho, p, 2, 99);
  CHECK(a.checks[0].value == b.checks[0].value);
  CHECK(a.params == b.params);
}
