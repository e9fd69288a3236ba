#include "weylcal/weyl.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylcal/fft.hpp"
#include "weylcal/harmonics.hpp"
#include "weylcal/interp.hpp"
#include "weylcal/kernels.hpp"
#include "weylcal/testfields.hpp"

namespace weylcal {

namespace {

std::size_t half_rank(const GridSpec& spec) {
  if (spec.rank() == 0 || spec.rank() % 2 != 0)
    throw std::invalid_argument("weyl: symbol grids carry axes (x_1..x_m, xi_1..xi_m)");
  return spec.rank() / 2;
}

// Wrapped index of `value` on `axis`; rejects off-lattice positions, which is
// how a symbol grid that is not half-spaced against its configuration grid
// gets diagnosed.
std::size_t lattice_index(const AxisSpec& axis, double value, const char* what) {
  double t = (value + axis.L) / axis.h();
  long long i = std::llround(t);
  if (std::abs(t - static_cast<double>(i)) > 1e-9 * std::max(1.0, std::abs(t)))
    throw std::invalid_argument(std::string("weyl: ") + what +
                                " falls off the symbol lattice; x axes must sample at half the "
                                "configuration spacing");
  long long n = static_cast<long long>(axis.N);
  return static_cast<std::size_t>(((i % n) + n) % n);
}

std::optional<double> effective_twist(const WeylSymbol& S, std::optional<double> rho) {
  std::optional<double> r = rho ? rho : S.rho;
  if (r && *r == 0.0) throw std::invalid_argument("weyl: twist rho must be nonzero");
  return r;
}

// Reads the field at xi scaled by `scale`, an exact index map whenever the
// scale is an integer.
SampledField rescale_xi(const SampledField& f, double scale, InterpMethod fallback) {
  std::size_t m = half_rank(f.spec);
  std::vector<std::size_t> src(2 * m);
  std::vector<double> sc(2 * m, 1.0), sh(2 * m, 0.0);
  for (std::size_t i = 0; i < 2 * m; ++i) src[i] = i;
  for (std::size_t i = m; i < 2 * m; ++i) sc[i] = scale;
  bool exact = std::abs(scale - static_cast<double>(std::llround(scale))) < 1e-12;
  return resample_affine(f, AffineMap::monomial(src, sc, sh),
                         exact ? InterpMethod::ExactIndex : fallback, Boundary::Wrap);
}

bool scale_read_exact(const AxisSpec& in, const AxisSpec& out, double scale) {
  double step = scale * out.h() / in.h();
  double base = (in.L - scale * out.L) / in.h();
  return std::abs(step - static_cast<double>(std::llround(step))) < 1e-9 &&
         std::abs(base - static_cast<double>(std::llround(base))) < 1e-9;
}

// Keeps the centered band of `keep` modes along `axis` (which must currently
// hold a Fourier dual axis) and doubles it, zeroing the rest.  Applied after
// scattering a kernel onto the midpoint/difference lattice, this rebuilds the
// unique half-band interpolant through the populated checkerboard sites.
void keep_centered_band(SampledField& F, std::size_t axis, std::size_t keep) {
  const AxisSpec& ax = F.spec.axes[axis];
  std::size_t stride = F.spec.strides()[axis];
  long long mid = static_cast<long long>(ax.N) / 2;
  long long kn = static_cast<long long>(keep);
  for (std::size_t i = 0; i < F.values.size(); ++i) {
    long long c = static_cast<long long>((i / stride) % ax.N) - mid;
    F.values[i] = (2 * c > -kn && 2 * c <= kn) ? 2.0 * F.values[i] : cplx{};
  }
}

double rel_l2(const SampledField& got, const SampledField& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.values.size(); ++i) {
    num += std::norm(got.values[i] - want.values[i]);
    den += std::norm(want.values[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// Self-dual configuration grid (h = 1/(2L)), on which the node and frequency
// lattices coincide and every covariance element below acts by exact indices.
GridSpec self_dual_config(std::size_t m, std::size_t N) {
  return GridSpec(std::vector<AxisSpec>(m, AxisSpec{0.5 * std::sqrt(static_cast<double>(N)),
                                                    N}));
}

const char* tag_name(CovarianceTag tag) {
  switch (tag) {
    case CovarianceTag::HeisenbergCovariance: return "heisenberg-covariance";
    case CovarianceTag::MetaplecticGenerator: return "metaplectic-generator";
    case CovarianceTag::JacobiRho: return "jacobi-rho";
    case CovarianceTag::FtConjugation: return "ft-conjugation";
  }
  return "unknown";
}

double heisenberg_residual(const CovarianceParams& p, int trials, std::uint64_t seed) {
  GridSpec cfg = self_dual_config(p.m, p.N);
  GridSpec sym = canonical_symbol_grid(cfg);
  double h = cfg.axes[0].h();
  std::mt19937_64 rng(substream_seed(seed, "weyl.covariance.heisenberg"));
  std::uniform_int_distribution<int> step(-static_cast<int>(p.N / 16), static_cast<int>(p.N / 16));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    // The two sides wrap differently: conjugation translates the operator
    // output around the configuration circle while the symbol translation
    // wraps the midpoint/difference lattice.  Windowing both draws and keeping
    // the translations short buries every seam cell far below the tolerance.
    TestFieldOptions so;
    so.seed = rng();
    so.window = 0.125;
    SampledField Sf = random_band_field(sym, so);
    TestFieldOptions uo;
    uo.seed = rng();
    uo.window = 1.0 / 6.0;
    SampledField u = random_band_field(cfg, uo);
    HeisenbergElement g;
    g.s = unit(rng);
    g.a.resize(p.m);
    g.alpha.resize(p.m);
    for (std::size_t i = 0; i < p.m; ++i) {
      g.a[i] = h * step(rng);
      g.alpha[i] = h * step(rng);
    }
    if (t == 0) g = HeisenbergElement::identity(p.m);  // degenerate element first
    HSOperator T = op_quantize(WeylSymbol{Sf, std::nullopt});
    SampledField lhs =
        schrodinger_act(std::nullopt, g, T.apply(schrodinger_act(std::nullopt, inverse(g), u)));
    std::vector<double> sh(2 * p.m);
    for (std::size_t i = 0; i < p.m; ++i) {
      sh[i] = -g.a[i];
      sh[p.m + i] = -g.alpha[i];
    }
    SampledField Sg =
        resample_affine(Sf, AffineMap::translation(sh), InterpMethod::ExactIndex, Boundary::Wrap);
    SampledField rhs = op_quantize(WeylSymbol{Sg, std::nullopt}).apply(u);
    worst = std::max(worst, rel_l2(lhs, rhs));
  }
  return worst;
}

double metaplectic_residual(const CovarianceParams& p, int trials, std::uint64_t seed) {
  GridSpec cfg = self_dual_config(p.m, p.N);
  GridSpec sym = canonical_symbol_grid(cfg);
  std::mt19937_64 rng(substream_seed(seed, "weyl.covariance.metaplectic"));
  std::uniform_int_distribution<int> coin(0, 1);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    TestFieldOptions so;
    so.seed = rng();
    so.band = 0.25;
    so.window = 0.2;
    SampledField Sf = random_band_field(sym, so);
    TestFieldOptions uo;
    uo.seed = rng();
    uo.band = 0.3;
    uo.window = 0.2;
    SampledField u = random_band_field(cfg, uo);
    MetGenerator gen;
    SampledField um(cfg);
    if (t % 3 == 0) {
      gen = MetGenerator::fourier_j();
      um = metaplectic_act(gen, metaplectic_act(gen, metaplectic_act(gen, u)));
    } else if (t % 3 == 1) {
      Eigen::MatrixXd B = Eigen::MatrixXd::Zero(p.m, p.m);
      for (std::size_t i = 0; i < p.m; ++i) B(i, i) = coin(rng) ? 0.5 : -0.5;
      gen = MetGenerator::shear(B);
      um = metaplectic_act(MetGenerator::shear(-B), u, p.fallback);
    } else {
      Eigen::MatrixXd A = Eigen::MatrixXd::Identity(p.m, p.m);
      for (std::size_t i = 0; i < p.m; ++i) A(i, i) = coin(rng) ? 2.0 : 0.5;
      gen = MetGenerator::diag_dilation(A);
      um = metaplectic_act(MetGenerator::diag_dilation(A.inverse()), u, p.fallback);
    }
    HSOperator T = op_quantize(WeylSymbol{Sf, std::nullopt});
    SampledField lhs = metaplectic_act(gen, T.apply(um), p.fallback);
    SampledField rhs = op_quantize(WeylSymbol{varpi_m0_act(gen, Sf), std::nullopt}).apply(u);
    worst = std::max(worst, rel_l2(lhs, rhs));
  }
  return worst;
}

double jacobi_residual(const CovarianceParams& p, int trials, std::uint64_t seed) {
  GridSpec cfg = self_dual_config(p.m, p.N);
  GridSpec sym = canonical_symbol_grid(cfg);
  double h = cfg.axes[0].h();
  std::mt19937_64 rng(substream_seed(seed, "weyl.covariance.jacobi"));
  std::uniform_int_distribution<int> step(-static_cast<int>(p.N / 8), static_cast<int>(p.N / 8));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  AutomorphismSpec twist = AutomorphismSpec::psi_rho(p.rho);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    TestFieldOptions so;
    so.seed = rng();
    so.band = 0.3;
    so.window = 1.0 / 6.0;  // keeps the 4/rho prescale from reading wrapped tails
    SampledField Sf = random_band_field(sym, so);
    TestFieldOptions uo;
    uo.seed = rng();
    uo.band = 0.3;
    uo.window = 0.2;  // the twisted action translates u, which wraps
    SampledField u = random_band_field(cfg, uo);
    HeisenbergElement g;
    g.s = unit(rng);
    g.a.resize(p.m);
    g.alpha.resize(p.m);
    for (std::size_t i = 0; i < p.m; ++i) {
      g.a[i] = h * step(rng);
      g.alpha[i] = h * step(rng);
    }
    SampledField lhs =
        op_quantize(WeylSymbol{varpi_act(p.rho, g, Sf), std::nullopt}, p.rho, p.fallback).apply(u);
    SampledField rhs = op_quantize(WeylSymbol{Sf, std::nullopt}, p.rho, p.fallback)
                           .apply(schrodinger_act(twist, inverse(g), u, p.fallback));
    worst = std::max(worst, rel_l2(lhs, rhs));
  }
  return worst;
}

double ftconj_residual(const CovarianceParams& p, int trials, std::uint64_t seed) {
  GridSpec g3(std::vector<AxisSpec>(1 + 2 * p.m, AxisSpec{8.0, p.N}));
  double h = g3.axes[0].h();
  PrincipalSeriesParams pr{p.m + 1, cplx{0.0, p.lambda}, p.delta};
  std::mt19937_64 rng(substream_seed(seed, "weyl.covariance.ftconj"));
  std::uniform_int_distribution<int> st(-8, 8);
  std::uniform_int_distribution<int> big(-2, 2);
  TestFieldOptions tf;
  tf.seed = rng();
  SampledField f = random_band_field(g3, tf);
  GridSpec slice_spec(std::vector<AxisSpec>(g3.axes.begin() + 1, g3.axes.end()));
  AxisSpec rho_axis = g3.axes[0].dual();
  std::size_t ns = slice_spec.total();
  SampledField F = fourier_axis(f, 0, FourierDirection::Forward);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    HeisenbergElement g;
    g.s = h * st(rng);
    g.a.resize(p.m);
    g.alpha.resize(p.m);
    for (std::size_t i = 0; i < p.m; ++i) {
      g.a[i] = 2.0 * big(rng);
      g.alpha[i] = 2.0 * big(rng);
    }
    SampledField lhs =
        fourier_axis(principal_series_act(pr, g, f, p.fallback), 0, FourierDirection::Forward);
    SampledField rhs(lhs.spec);
    for (std::size_t j = 0; j < p.N; ++j) {
      SampledField slice(slice_spec);
      std::copy(F.values.begin() + j * ns, F.values.begin() + (j + 1) * ns,
                slice.values.begin());
      double rho = rho_axis.node(j);
      SampledField moved(slice_spec);
      if (rho == 0.0) {
        // this slice degenerates to the plain translation, no phase
        std::vector<double> sh(2 * p.m);
        for (std::size_t i = 0; i < p.m; ++i) {
          sh[i] = -g.a[i];
          sh[p.m + i] = -g.alpha[i];
        }
        moved = resample_affine(slice, AffineMap::translation(sh), InterpMethod::ExactIndex,
                                Boundary::Wrap);
      } else {
        moved = varpi_act(rho, g, slice, p.fallback);
      }
      std::copy(moved.values.begin(), moved.values.end(), rhs.values.begin() + j * ns);
    }
    worst = std::max(worst, rel_l2(lhs, rhs));
  }
  return worst;
}

}  // namespace

SampledField HSOperator::apply(const SampledField& u) const {
  if (!grids_close(u.spec, config))
    throw std::invalid_argument("weyl: operator and argument grids differ");
  SampledField out(config);
  Eigen::Map<const Eigen::VectorXcd> uv(u.values.data(), static_cast<Eigen::Index>(u.values.size()));
  Eigen::Map<Eigen::VectorXcd> ov(out.values.data(), static_cast<Eigen::Index>(out.values.size()));
  ov = quad_weight() * (kernel * uv);
  return out;
}

double HSOperator::hs_norm() const { return quad_weight() * kernel.norm(); }

cplx HSOperator::trace() const { return quad_weight() * kernel.trace(); }

HSOperator hs_identity(const GridSpec& config) {
  std::size_t n = config.total();
  HSOperator T;
  T.config = config;
  T.kernel = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) /
             config.weight();
  return T;
}

HSOperator hs_compose(const HSOperator& a, const HSOperator& b) {
  if (!grids_close(a.config, b.config))
    throw std::invalid_argument("weyl: composed operators live on different grids");
  HSOperator T;
  T.config = a.config;
  T.kernel = a.quad_weight() * (a.kernel * b.kernel);
  return T;
}

GridSpec canonical_symbol_grid(const GridSpec& config) {
  std::size_t m = config.rank();
  if (m == 0) throw std::invalid_argument("weyl: configuration grid is empty");
  std::vector<AxisSpec> ax(2 * m);
  for (std::size_t a = 0; a < m; ++a) {
    const AxisSpec& c = config.axes[a];
    if (c.N < 2 || c.N % 2 != 0)
      throw std::invalid_argument("weyl: configuration axes need even N");
    ax[a] = AxisSpec{c.L, 2 * c.N};
    ax[m + a] = AxisSpec{static_cast<double>(c.N) / (4.0 * c.L), 2 * c.N};
  }
  return GridSpec(std::move(ax));
}

GridSpec square_symbol_grid(const GridSpec& config) {
  GridSpec sym = canonical_symbol_grid(config);
  std::size_t m = config.rank();
  for (std::size_t a = 0; a < m; ++a)
    sym.axes[m + a] = AxisSpec{static_cast<double>(config.axes[a].N) / (2.0 * config.axes[a].L),
                               2 * config.axes[a].N};
  return sym;
}

GridSpec symbol_config_grid(const GridSpec& symbol) {
  std::size_t m = half_rank(symbol);
  std::vector<AxisSpec> ax(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (symbol.axes[a].N % 2 != 0)
      throw std::invalid_argument("weyl: symbol x axes need even N");
    ax[a] = AxisSpec{symbol.axes[a].L, symbol.axes[a].N / 2};
  }
  return GridSpec(std::move(ax));
}

HSOperator op_quantize(const WeylSymbol& S, std::optional<double> rho, InterpMethod fallback) {
  std::size_t m = half_rank(S.field.spec);
  std::optional<double> tw = effective_twist(S, rho);
  GridSpec cfg = symbol_config_grid(S.field.spec);

  // A twisted gather reads the difference lattice at spacing rho h / 4.  When
  // that lands on the Fourier dual of the raw xi axes and fits their extent,
  // skip the xi prescale and read there directly: the prescale decimates xi,
  // which folds far off-diagonal kernel entries back in band.  Otherwise
  // decimate first (exact whenever 4 / rho is an integer).
  bool direct = static_cast<bool>(tw);
  std::vector<long long> dstep(m, 1);
  for (std::size_t a = 0; a < m && direct; ++a) {
    AxisSpec eta = S.field.spec.axes[m + a].dual();
    double step = (*tw / 4.0) * cfg.axes[a].h() / eta.h();
    dstep[a] = std::llround(step);
    long long span = (static_cast<long long>(cfg.axes[a].N) - 1) * std::llabs(dstep[a]);
    long long half = static_cast<long long>(eta.N) / 2;
    direct = std::abs(step - static_cast<double>(dstep[a])) < 1e-9 &&
             half + span < static_cast<long long>(eta.N) && half - span >= 0;
  }

  SampledField work = S.field;
  if (tw && !direct) work = rescale_xi(work, 4.0 / *tw, fallback);
  for (std::size_t a = 0; a < m; ++a) work = fourier_axis(work, m + a, FourierDirection::Inverse);
  if (direct) {
    cplx jac = std::pow(cplx{*tw / 4.0, 0.0}, static_cast<double>(m));
    kernels::active().scale(work.values.data(), jac, work.values.data(), work.values.size());
  }

  std::vector<std::size_t> sst = work.spec.strides();
  std::vector<std::size_t> cst = cfg.strides();
  std::vector<std::vector<std::size_t>> mid(m), dif(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t n = cfg.axes[a].N;
    double h = cfg.axes[a].h();
    double dscale = direct ? *tw / 4.0 : 1.0;
    mid[a].resize(2 * n - 1);
    dif[a].resize(2 * n - 1);
    for (std::size_t s = 0; s < 2 * n - 1; ++s)
      mid[a][s] = lattice_index(work.spec.axes[a],
                                -cfg.axes[a].L + 0.5 * h * static_cast<double>(s), "midpoint");
    for (long long d = 1 - static_cast<long long>(n); d < static_cast<long long>(n); ++d)
      dif[a][static_cast<std::size_t>(d + static_cast<long long>(n) - 1)] =
          lattice_index(work.spec.axes[m + a], dscale * h * static_cast<double>(d), "difference");
    // distinct kernel differences must read distinct symbol cells; a xi axis
    // that is too short folds several differences onto one cell
    std::vector<char> seen(work.spec.axes[m + a].N, 0);
    for (std::size_t s = 0; s < dif[a].size(); ++s)
      if (seen[dif[a][s]]++)
        throw std::invalid_argument(
            "weyl: xi axes cannot resolve the difference lattice of the configuration grid");
  }

  std::size_t tot = cfg.total();
  HSOperator T;
  T.config = cfg;
  T.kernel.resize(static_cast<Eigen::Index>(tot), static_cast<Eigen::Index>(tot));
  for (std::size_t fj = 0; fj < tot; ++fj)
    for (std::size_t fk = 0; fk < tot; ++fk) {
      std::size_t g = 0;
      for (std::size_t a = 0; a < m; ++a) {
        std::size_t n = cfg.axes[a].N;
        std::size_t ja = (fj / cst[a]) % n;
        std::size_t ka = (fk / cst[a]) % n;
        g += mid[a][ja + ka] * sst[a];
        g += dif[a][static_cast<std::size_t>(static_cast<long long>(ja) -
                                             static_cast<long long>(ka) +
                                             static_cast<long long>(n) - 1)] *
             sst[m + a];
      }
      T.kernel(static_cast<Eigen::Index>(fj), static_cast<Eigen::Index>(fk)) = work.values[g];
    }
  return T;
}

WeylSymbol op_dequantize(const HSOperator& T, std::optional<double> rho, InterpMethod fallback) {
  if (rho && *rho == 0.0) throw std::invalid_argument("weyl: twist rho must be nonzero");
  const GridSpec& cfg = T.config;
  std::size_t m = cfg.rank();
  GridSpec sym = canonical_symbol_grid(cfg);
  std::size_t tot = cfg.total();
  if (static_cast<std::size_t>(T.kernel.rows()) != tot ||
      static_cast<std::size_t>(T.kernel.cols()) != tot)
    throw std::invalid_argument("weyl: kernel size does not match the configuration grid");

  std::vector<AxisSpec> eaxes = sym.axes;
  for (std::size_t a = 0; a < m; ++a) eaxes[m + a] = sym.axes[m + a].dual();
  SampledField A{GridSpec(std::move(eaxes))};
  std::vector<std::size_t> est = A.spec.strides();
  std::vector<std::size_t> cst = cfg.strides();
  for (std::size_t fj = 0; fj < tot; ++fj)
    for (std::size_t fk = 0; fk < tot; ++fk) {
      std::size_t g = 0;
      for (std::size_t a = 0; a < m; ++a) {
        std::size_t n = cfg.axes[a].N;
        std::size_t ja = (fj / cst[a]) % n;
        std::size_t ka = (fk / cst[a]) % n;
        g += (ja + ka) * est[a] + (ja - ka + n) * est[m + a];
      }
      A.values[g] = T.kernel(static_cast<Eigen::Index>(fj), static_cast<Eigen::Index>(fk));
    }

  for (std::size_t a = 0; a < m; ++a) {
    A = fourier_axis(A, a, FourierDirection::Forward);
    keep_centered_band(A, a, cfg.axes[a].N);
    A = fourier_axis(A, a, FourierDirection::Inverse);
  }
  for (std::size_t a = 0; a < m; ++a) A = fourier_axis(A, m + a, FourierDirection::Forward);
  if (rho) A = rescale_xi(A, *rho / 4.0, fallback);
  return WeylSymbol{std::move(A), rho};
}

WeylSymbol dagger(const WeylSymbol& S, double rho, DaggerSide side, InterpMethod fallback) {
  if (rho == 0.0) throw std::invalid_argument("weyl: dagger twist rho must be nonzero");
  std::size_t m = half_rank(S.field.spec);
  SampledField F = S.field;
  for (std::size_t a = 0; a < m; ++a) F = fourier_axis(F, m + a, FourierDirection::Forward);

  double sgn = side == DaggerSide::Left ? -1.0 : 1.0;
  std::vector<std::size_t> src(2 * m);
  std::vector<double> sc(2 * m), sh(2 * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    src[a] = m + a;
    sc[a] = sgn * 2.0 / rho;
    src[m + a] = a;
    sc[m + a] = sgn * rho / 2.0;
  }

  bool exact = true;
  for (std::size_t i = 0; i < 2 * m; ++i)
    exact = exact && scale_read_exact(F.spec.axes[src[i]], F.spec.axes[i], sc[i]);
  bool swappable = true;
  for (std::size_t a = 0; a < m; ++a)
    swappable = swappable && axes_close(F.spec.axes[a], F.spec.axes[m + a]);

  SampledField G(F.spec);
  if (exact) {
    G = resample_affine(F, AffineMap::monomial(src, sc, sh), InterpMethod::ExactIndex,
                        Boundary::Wrap);
  } else if (swappable) {
    // split into the exact axis swap and a diagonal rescale, which keeps
    // band-limited interpolation available for the residual scaling
    std::vector<double> one(2 * m, 1.0), dsc(2 * m);
    SampledField sw =
        resample_affine(F, AffineMap::monomial(src, one, sh), InterpMethod::ExactIndex,
                        Boundary::Wrap);
    for (std::size_t a = 0; a < m; ++a) {
      dsc[a] = sc[m + a];
      dsc[m + a] = sc[a];
    }
    G = resample_affine(sw, AffineMap::diagonal(dsc, sh), fallback, Boundary::Wrap);
    // reads past the sampled window return zero rather than wrapping; the
    // periodic continuation folds distant symbol mass back in band and the
    // map would stop inverting
    std::vector<std::size_t> idx(2 * m, 0);
    std::size_t t = 0;
    do {
      for (std::size_t a = 0; a < 2 * m; ++a) {
        const AxisSpec& ax = G.spec.axes[a];
        double v = dsc[a] * ax.node(idx[a]) + sh[a];
        if (v < -ax.L || v >= ax.L) {
          G.values[t] = 0.0;
          break;
        }
      }
      ++t;
    } while (next_index(idx, G.spec));
  } else {
    InterpMethod method =
        fallback == InterpMethod::Bandlimited ? InterpMethod::Lagrange6 : fallback;
    std::vector<std::size_t> idx(2 * m, 0);
    std::vector<double> pt(2 * m);
    std::size_t t = 0;
    do {
      std::vector<double> c = F.spec.coords(idx);
      for (std::size_t i = 0; i < 2 * m; ++i) pt[i] = sc[i] * c[src[i]];
      G.values[t++] = interp_at(F, pt.data(), method, Boundary::Zero);
    } while (next_index(idx, F.spec));
  }

  for (std::size_t a = 0; a < m; ++a) G = fourier_axis(G, m + a, FourierDirection::Inverse);
  return WeylSymbol{std::move(G), S.rho};
}

std::pair<WeylSymbol, WeylSymbol> parity_split(const WeylSymbol& S, double rho,
                                               InterpMethod fallback) {
  WeylSymbol D = dagger(S, rho, DaggerSide::Right, fallback);
  WeylSymbol plus = S, minus = S;
  for (std::size_t i = 0; i < S.field.values.size(); ++i) {
    plus.field.values[i] = 0.5 * (S.field.values[i] + D.field.values[i]);
    minus.field.values[i] = 0.5 * (S.field.values[i] - D.field.values[i]);
  }
  return {std::move(plus), std::move(minus)};
}

CheckReport covariance_residual(CovarianceTag tag, const CovarianceParams& params, int trials,
                                std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("weyl: trials must be positive");
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  switch (tag) {
    case CovarianceTag::HeisenbergCovariance:
      worst = heisenberg_residual(params, trials, seed);
      break;
    case CovarianceTag::MetaplecticGenerator:
      worst = metaplectic_residual(params, trials, seed);
      break;
    case CovarianceTag::JacobiRho:
      worst = jacobi_residual(params, trials, seed);
      break;
    case CovarianceTag::FtConjugation:
      worst = ftconj_residual(params, trials, seed);
      break;
  }
  CheckReport rep;
  rep.suite = "weyl.covariance";
  rep.params["tag"] = tag_name(tag);
  rep.params["m"] = std::to_string(params.m);
  rep.params["N"] = std::to_string(params.N);
  rep.params["rho"] = std::to_string(params.rho);
  rep.params["lambda"] = std::to_string(params.lambda);
  rep.params["delta"] = std::to_string(params.delta);
  rep.params["trials"] = std::to_string(trials);
  rep.params["seed"] = std::to_string(seed);
  rep.add(tag_name(tag), worst, params.tolerance);
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace weylcal
