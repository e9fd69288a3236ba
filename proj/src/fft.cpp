#include "weylcal/fft.hpp"

#include <cmath>
#include <numbers>

namespace weylcal {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::vector<std::size_t> bit_reverse_table(std::size_t n) {
  std::vector<std::size_t> rev(n, 0);
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    rev[i] = j;
  }
  return rev;
}

// Forward twiddles e^{-2pi i j/n}, j < n/2.
std::vector<cplx> twiddle_table(std::size_t n) {
  std::vector<cplx> tw(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j)
    tw[j] = std::polar(1.0, -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
  return tw;
}

}  // namespace

DftPlan::DftPlan(std::size_t n, int sign) : n_(n), sign_(sign), pow2_(is_pow2(n)) {
  if (n == 0) throw std::invalid_argument("empty transform");
  if (pow2_) {
    rev_ = bit_reverse_table(n);
    tw_ = twiddle_table(n);
    return;
  }
  m_ = next_pow2(2 * n - 1);
  mrev_ = bit_reverse_table(m_);
  mtw_ = twiddle_table(m_);
  chirp_.resize(n);
  std::uint64_t period = 2 * static_cast<std::uint64_t>(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t r = (static_cast<std::uint64_t>(j) * j) % period;
    chirp_[j] = std::polar(1.0, sign * kPi * static_cast<double>(r) / static_cast<double>(n));
  }
  std::vector<cplx> b(m_, cplx(0, 0));
  for (std::size_t j = 0; j < n; ++j) {
    b[j] = std::conj(chirp_[j]);
    if (j != 0) b[m_ - j] = std::conj(chirp_[j]);
  }
  pow2_apply(b.data(), m_, -1, mrev_, mtw_);
  bspec_ = std::move(b);
}

void DftPlan::pow2_apply(cplx* a, std::size_t n, int sign, const std::vector<std::size_t>& rev,
                         const std::vector<cplx>& tw) const {
  for (std::size_t i = 0; i < n; ++i)
    if (i < rev[i]) std::swap(a[i], a[rev[i]]);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t step = n / len;
    for (std::size_t blk = 0; blk < n; blk += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        cplx w = tw[j * step];
        if (sign > 0) w = std::conj(w);
        cplx u = a[blk + j];
        cplx v = a[blk + j + len / 2] * w;
        a[blk + j] = u + v;
        a[blk + j + len / 2] = u - v;
      }
    }
  }
}

void DftPlan::apply(cplx* line) const {
  if (pow2_) {
    pow2_apply(line, n_, sign_, rev_, tw_);
    return;
  }
  std::vector<cplx> u(m_, cplx(0, 0));
  for (std::size_t j = 0; j < n_; ++j) u[j] = line[j] * chirp_[j];
  pow2_apply(u.data(), m_, -1, mrev_, mtw_);
  for (std::size_t j = 0; j < m_; ++j) u[j] *= bspec_[j];
  pow2_apply(u.data(), m_, +1, mrev_, mtw_);
  double inv_m = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) line[k] = chirp_[k] * (u[k] * inv_m);
}

SampledField fourier_axis(const SampledField& f, std::size_t axis, FourierDirection dir) {
  if (axis >= f.spec.rank()) throw std::invalid_argument("fourier_axis: axis out of range");
  const AxisSpec& ax = f.spec.axes[axis];
  const std::size_t N = ax.N;
  const double h = ax.h();
  const int sign = (dir == FourierDirection::Forward) ? -1 : +1;
  // (-1)^{N/2}: centering phase collected from the output-side sign flip.
  const double edge = (N / 2 % 2 == 0) ? 1.0 : -1.0;

  GridSpec out_spec = f.spec;
  out_spec.axes[axis] = ax.dual();
  SampledField out(out_spec);

  const auto st = f.spec.strides();
  const std::size_t stride = st[axis];
  const std::size_t total = f.spec.total();
  const std::size_t block = stride * N;

  DftPlan plan(N, sign);
  std::vector<cplx> line(N);
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      const cplx* src = f.values.data() + base + off;
      for (std::size_t k = 0; k < N; ++k)
        line[k] = (k % 2 == 0) ? src[k * stride] : -src[k * stride];
      plan.apply(line.data());
      cplx* dst = out.values.data() + base + off;
      for (std::size_t j = 0; j < N; ++j) {
        double s = (j % 2 == 0) ? edge : -edge;
        dst[j * stride] = line[j] * (h * s);
      }
    }
  }
  return out;
}

SampledField fourier_all(const SampledField& f, FourierDirection dir) {
  SampledField out = f;
  for (std::size_t a = 0; a < f.spec.rank(); ++a) out = fourier_axis(out, a, dir);
  return out;
}

SampledField symplectic_fourier(const SampledField& f) {
  const std::size_t rank = f.spec.rank();
  if (rank == 0 || rank % 2 != 0)
    throw std::invalid_argument("symplectic_fourier: rank must be even");
  const std::size_t m = rank / 2;
  for (std::size_t i = 0; i < m; ++i)
    if (!axes_close(f.spec.axes[i], f.spec.axes[m + i]))
      throw std::invalid_argument("symplectic_fourier: x and xi axis blocks must share geometry");

  SampledField g = fourier_all(f, FourierDirection::Forward);

  // out(x, xi) = g(-xi, x): exact reflection + block swap on indices.
  SampledField out(g.spec);
  const auto st = g.spec.strides();
  std::vector<std::size_t> idx(rank, 0), src(rank, 0);
  do {
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t nxi = g.spec.axes[i].N;
      src[i] = (nxi - idx[m + i]) % nxi;  // first block reads -xi
      src[m + i] = idx[i];                // second block reads x
    }
    std::size_t so = 0, dof = 0;
    for (std::size_t i = 0; i < rank; ++i) {
      so += src[i] * st[i];
      dof += idx[i] * st[i];
    }
    out.values[dof] = g.values[so];
  } while (next_index(idx, g.spec));
  return out;
}

}  // namespace weylcal
