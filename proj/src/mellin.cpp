#include "weylcal/mellin.hpp"

#include "weylcal/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace weylcal {

namespace {
constexpr double kPi = std::numbers::pi;
}

MellinTransform::MellinTransform(const SampledField& f, SphereGrid sphere, MellinOptions opt)
    : sphere_(std::move(sphere)) {
  n_ = sphere_.n;
  if (f.spec.rank() != 2 * n_)
    throw std::invalid_argument("mellin: field rank must be 2n for S^{2n-1} rays");
  double hmin = f.spec.axes[0].h();
  double rmax = f.spec.axes[0].L;
  for (const auto& ax : f.spec.axes) {
    hmin = std::min(hmin, ax.h());
    rmax = std::min(rmax, ax.L - opt.outer_margin * ax.h());
  }
  rmin_ = opt.rmin_factor * hmin;
  rmax_ = rmax;
  if (!(rmax_ > 16.0 * rmin_)) throw std::invalid_argument("mellin: degenerate radial range");

  double s0 = std::log(rmin_), s1 = std::log(rmax_);
  auto count = static_cast<std::size_t>(std::floor((s1 - s0) / opt.ds)) + 1;
  s_.resize(count);
  w_.assign(count, opt.ds);
  for (std::size_t k = 0; k < count; ++k) s_[k] = s0 + opt.ds * static_cast<double>(k);
  w_.front() *= 0.5;
  w_.back() *= 0.5;

  std::vector<std::size_t> origin(f.spec.rank());
  for (std::size_t a = 0; a < f.spec.rank(); ++a) origin[a] = f.spec.axes[a].N / 2;
  f0_ = f.at(origin);

  std::size_t nn = sphere_.size();
  prof_.assign(nn * count, cplx{0.0, 0.0});
  std::vector<double> p(2 * n_);
  for (std::size_t i = 0; i < nn; ++i) {
    const double* X = sphere_.node(i);
    cplx* row = prof_.data() + i * count;
    for (std::size_t k = 0; k < count; ++k) {
      double r = std::exp(s_[k]);
      for (std::size_t j = 0; j < 2 * n_; ++j) p[j] = r * X[j];
      double amp = std::exp(static_cast<double>(n_) * s_[k]);
      row[k] = amp * interp_at(f, p.data(), opt.method, Boundary::Zero);
    }
  }

  // Outer tail guard: aggregate ray amplitude at the cutoff, extrapolated by
  // the local log-slope, must be a negligible fraction of the resolved mass.
  auto amp_at = [&](std::size_t k) {
    double a2 = 0.0;
    for (std::size_t i = 0; i < nn; ++i) a2 += sphere_.weights[i] * std::norm(prof_[i * count + k]);
    return std::sqrt(a2);
  };
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) total += w_[k] * amp_at(k);
  double a_end = amp_at(count - 1);
  if (a_end > 1e-300 * std::max(total, 1.0)) {
    std::size_t back = std::min(count - 1, static_cast<std::size_t>(std::llround(0.5 / opt.ds)));
    double a_ref = amp_at(count - 1 - back);
    double span = s_[count - 1] - s_[count - 1 - back];
    double slope =
        (std::log(std::max(a_end, 1e-300)) - std::log(std::max(a_ref, 1e-300))) / span;
    double tail = (slope < -0.25) ? a_end / (-slope) : std::numeric_limits<double>::infinity();
    if (!(tail <= opt.tail_tol * total))
      throw NumericalGuard("mellin: field mass beyond the outer radial cutoff is not negligible");
  }
}

std::vector<cplx> MellinTransform::plus_part(double lambda) const {
  std::size_t count = s_.size();
  std::vector<cplx> ph(count);
  for (std::size_t k = 0; k < count; ++k) ph[k] = std::polar(w_[k], lambda * s_[k]);
  // inner analytic continuation below r_min: f(0) r_min^{n+iλ}/(n+iλ)
  cplx expo(static_cast<double>(n_), lambda);
  cplx inner = f0_ * std::polar(std::pow(rmin_, static_cast<double>(n_)),
                                lambda * std::log(rmin_)) /
               expo;
  std::vector<cplx> out(sphere_.size());
  const auto& ops = kernels::active();
  for (std::size_t i = 0; i < sphere_.size(); ++i)
    out[i] = ops.dotu(prof_.data() + i * count, ph.data(), count) + inner;
  return out;
}

std::vector<cplx> MellinTransform::evaluate(double lambda, int delta) const {
  std::vector<cplx> plus = plus_part(lambda);
  double sgn = (delta % 2 != 0) ? -1.0 : 1.0;
  std::vector<cplx> out(plus.size());
  for (std::size_t i = 0; i < plus.size(); ++i)
    out[i] = (plus[i] + sgn * plus[sphere_.antipode[i]]) / (4.0 * kPi);
  return out;
}

double MellinTransform::norm2_integrand(double lambda, int delta) const {
  std::vector<cplx> v = evaluate(lambda, delta);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += sphere_.weights[i] * std::norm(v[i]);
  return acc;
}

SimpsonLattice simpson_lattice(double a, double b, std::size_t count) {
  if (count < 3 || count % 2 == 0)
    throw std::invalid_argument("simpson_lattice: need an odd count >= 3");
  SimpsonLattice lat;
  lat.x.resize(count);
  lat.w.resize(count);
  double h = (b - a) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    lat.x[k] = a + h * static_cast<double>(k);
    double c = (k == 0 || k == count - 1) ? 1.0 : (k % 2 != 0 ? 4.0 : 2.0);
    lat.w[k] = c * h / 3.0;
  }
  return lat;
}

double mellin_plancherel_total(const MellinTransform& mt, const SimpsonLattice& lam) {
  double acc = 0.0;
  for (std::size_t k = 0; k < lam.x.size(); ++k) {
    double g = mt.norm2_integrand(lam.x[k], 0) + mt.norm2_integrand(lam.x[k], 1);
    acc += lam.w[k] * g;
  }
  return 2.0 * kPi * acc;
}

}  // namespace weylcal
