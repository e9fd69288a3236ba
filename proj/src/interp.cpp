#include "weylcal/interp.hpp"

#include "weylcal/fft.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylcal {

namespace {

constexpr double kPi = std::numbers::pi;

// Keys kernel, a = -1/2 (Catmull-Rom). Support (-2, 2).
double keys_weight(double s) {
  double t = std::abs(s);
  if (t <= 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

struct MonomialForm {
  std::vector<std::size_t> src;
  std::vector<double> scale;
  std::vector<double> shift;
};

MonomialForm decompose_monomial(const AffineMap& map) {
  std::size_t d = map.dim();
  if (map.M.size() != d) throw std::invalid_argument("affine map: M rows do not match c");
  MonomialForm out;
  out.src.assign(d, 0);
  out.scale.assign(d, 0.0);
  out.shift = map.c;
  std::vector<int> col_used(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    if (map.M[j].size() != d) throw std::invalid_argument("affine map: M is not square");
    std::size_t nz = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (map.M[j][k] != 0.0) {
        ++nz;
        out.src[j] = k;
        out.scale[j] = map.M[j][k];
      }
    }
    if (nz != 1) throw std::invalid_argument("resample: map must have one nonzero per row");
    col_used[out.src[j]] += 1;
  }
  for (std::size_t k = 0; k < d; ++k)
    if (col_used[k] != 1) throw std::invalid_argument("resample: map must be invertible monomial");
  return out;
}

long long wrap_index(long long k, long long n) {
  long long r = k % n;
  return r < 0 ? r + n : r;
}

// Spectral coefficients in the centered convention, then trig evaluation at
// arbitrary targets. The interpolant is 2L-periodic.
void band_eval_line(const AxisSpec& ax, std::vector<cplx>& line, DftPlan& plan,
                    const std::vector<double>& targets, cplx* out, std::ptrdiff_t out_stride) {
  std::size_t n = ax.N;
  double h = ax.h();
  double drho = 1.0 / (2.0 * ax.L);
  double edge = ((n / 2) % 2 != 0) ? -1.0 : 1.0;
  for (std::size_t k = 1; k < n; k += 2) line[k] = -line[k];
  plan.apply(line.data());
  for (std::size_t j = 0; j < n; ++j) {
    double s = edge * ((j % 2 != 0) ? -h : h);
    line[j] *= s;
  }
  for (std::size_t m = 0; m < targets.size(); ++m) {
    double t = targets[m];
    cplx w = std::polar(1.0, 2.0 * kPi * t * drho);
    cplx acc = 0.0;
    cplx ph = std::polar(1.0, -kPi * t * static_cast<double>(n) * drho);
    for (std::size_t j = 0; j < n; ++j) {
      if (j % 16 == 0)
        ph = std::polar(1.0, 2.0 * kPi * t * drho * (static_cast<double>(j) - 0.5 * static_cast<double>(n)));
      acc += line[j] * ph;
      ph *= w;
    }
    out[static_cast<std::ptrdiff_t>(m) * out_stride] = acc * drho;
  }
}

}  // namespace

InterpMethod parse_interp(const std::string& name) {
  if (name == "exact-index") return InterpMethod::ExactIndex;
  if (name == "cubic") return InterpMethod::Cubic;
  if (name == "lagrange6") return InterpMethod::Lagrange6;
  if (name == "bandlimited") return InterpMethod::Bandlimited;
  throw std::invalid_argument("unknown interpolation method: " + name);
}

AffineMap AffineMap::identity(std::size_t d) {
  AffineMap m;
  m.M.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) m.M[j][j] = 1.0;
  m.c.assign(d, 0.0);
  return m;
}

AffineMap AffineMap::translation(std::vector<double> shift) {
  AffineMap m = identity(shift.size());
  m.c = std::move(shift);
  return m;
}

AffineMap AffineMap::diagonal(std::vector<double> scale, std::vector<double> shift) {
  if (scale.size() != shift.size()) throw std::invalid_argument("diagonal map: size mismatch");
  AffineMap m = identity(scale.size());
  for (std::size_t j = 0; j < scale.size(); ++j) m.M[j][j] = scale[j];
  m.c = std::move(shift);
  return m;
}

AffineMap AffineMap::monomial(std::vector<std::size_t> src, std::vector<double> scale,
                              std::vector<double> shift) {
  std::size_t d = src.size();
  if (scale.size() != d || shift.size() != d) throw std::invalid_argument("monomial map: size mismatch");
  AffineMap m;
  m.M.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    if (src[j] >= d) throw std::invalid_argument("monomial map: source index out of range");
    m.M[j][src[j]] = scale[j];
  }
  m.c = std::move(shift);
  return m;
}

std::vector<double> AffineMap::apply(const std::vector<double>& x) const {
  std::size_t d = dim();
  if (x.size() != d) throw std::invalid_argument("affine map: point dimension mismatch");
  std::vector<double> y(c);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) y[j] += M[j][k] * x[k];
  return y;
}

cplx interp_at(const SampledField& f, const double* point, InterpMethod method, Boundary bc) {
  if (method != InterpMethod::Cubic && method != InterpMethod::Lagrange6)
    throw std::invalid_argument("interp_at: method must be cubic or lagrange6");
  const auto& axes = f.spec.axes;
  std::size_t d = axes.size();
  int sup = (method == InterpMethod::Cubic) ? 4 : 6;
  std::vector<std::array<double, 6>> w(d);
  std::vector<long long> base(d);
  for (std::size_t a = 0; a < d; ++a) {
    const AxisSpec& ax = axes[a];
    double u = (point[a] + ax.L) / ax.h();
    double fl = std::floor(u);
    auto i0 = static_cast<long long>(fl);
    double frac = u - fl;
    if (method == InterpMethod::Cubic) {
      base[a] = i0 - 1;
      w[a] = {keys_weight(1.0 + frac), keys_weight(frac), keys_weight(1.0 - frac),
              keys_weight(2.0 - frac), 0.0, 0.0};
    } else {
      base[a] = i0 - 2;
      double v = frac + 2.0;
      for (int m = 0; m < 6; ++m) {
        double num = 1.0, den = 1.0;
        for (int k = 0; k < 6; ++k) {
          if (k == m) continue;
          num *= v - static_cast<double>(k);
          den *= static_cast<double>(m - k);
        }
        w[a][static_cast<std::size_t>(m)] = num / den;
      }
    }
  }
  const auto& strides = f.spec.strides();
  std::vector<int> m(d, 0);
  cplx acc = 0.0;
  while (true) {
    double weight = 1.0;
    std::size_t flat = 0;
    bool inside = true;
    for (std::size_t a = 0; a < d; ++a) {
      weight *= w[a][static_cast<std::size_t>(m[a])];
      long long q = base[a] + m[a];
      auto n = static_cast<long long>(axes[a].N);
      if (bc == Boundary::Wrap) {
        q = wrap_index(q, n);
      } else if (q < 0 || q >= n) {
        inside = false;
        break;
      }
      flat += static_cast<std::size_t>(q) * strides[a];
    }
    if (inside && weight != 0.0) acc += weight * f.values[flat];
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (++m[a] < sup) break;
      m[a] = 0;
      if (a == 0) return acc;
    }
  }
}

SampledField resample_affine(const SampledField& f, const AffineMap& map, InterpMethod method,
                             Boundary bc) {
  const auto& axes = f.spec.axes;
  std::size_t d = axes.size();
  if (map.dim() != d) throw std::invalid_argument("resample: map dimension mismatch");
  MonomialForm mono = decompose_monomial(map);
  SampledField out(f.spec);
  const auto& strides = f.spec.strides();

  if (method == InterpMethod::ExactIndex) {
    // arg_j = scale_j * node_{src_j}(k) + shift_j must land on a node of axis j.
    std::vector<std::vector<long long>> tab(d);
    for (std::size_t j = 0; j < d; ++j) {
      const AxisSpec& in_ax = axes[mono.src[j]];
      const AxisSpec& tgt = axes[j];
      tab[j].assign(in_ax.N, 0);
      for (std::size_t k = 0; k < in_ax.N; ++k) {
        double v = mono.scale[j] * in_ax.node(k) + mono.shift[j];
        double u = (v + tgt.L) / tgt.h();
        long long ki = std::llround(u);
        if (std::abs(u - static_cast<double>(ki)) > 1e-9)
          throw std::invalid_argument("exact-index resample: map does not preserve the grid");
        auto n = static_cast<long long>(tgt.N);
        if (bc == Boundary::Wrap) {
          tab[j][k] = wrap_index(ki, n);
        } else {
          tab[j][k] = (ki >= 0 && ki < n) ? ki : -1;
        }
      }
    }
    std::vector<std::size_t> idx(d, 0);
    std::size_t dof = 0;
    do {
      std::size_t flat = 0;
      bool inside = true;
      for (std::size_t j = 0; j < d; ++j) {
        long long q = tab[j][idx[mono.src[j]]];
        if (q < 0) {
          inside = false;
          break;
        }
        flat += static_cast<std::size_t>(q) * strides[j];
      }
      out.values[dof++] = inside ? f.values[flat] : cplx{0.0, 0.0};
    } while (next_index(idx, f.spec));
    return out;
  }

  if (method == InterpMethod::Bandlimited) {
    for (std::size_t j = 0; j < d; ++j)
      if (mono.src[j] != j)
        throw std::invalid_argument("bandlimited resample: map must be diagonal");
    SampledField cur = f;
    for (std::size_t a = 0; a < d; ++a) {
      if (mono.scale[a] == 1.0 && mono.shift[a] == 0.0) continue;
      const AxisSpec& ax = axes[a];
      std::vector<double> targets(ax.N);
      for (std::size_t k = 0; k < ax.N; ++k)
        targets[k] = mono.scale[a] * ax.node(k) + mono.shift[a];
      DftPlan plan(ax.N, -1);
      SampledField next(f.spec);
      std::size_t stride = strides[a];
      std::size_t block = stride * ax.N;
      std::vector<cplx> line(ax.N);
      for (std::size_t base = 0; base < cur.values.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
          const cplx* src = cur.values.data() + base + off;
          for (std::size_t k = 0; k < ax.N; ++k) line[k] = src[k * stride];
          band_eval_line(ax, line, plan, targets, next.values.data() + base + off,
                         static_cast<std::ptrdiff_t>(stride));
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  std::vector<std::vector<double>> val(d);
  for (std::size_t j = 0; j < d; ++j) {
    const AxisSpec& in_ax = axes[mono.src[j]];
    val[j].assign(in_ax.N, 0.0);
    for (std::size_t k = 0; k < in_ax.N; ++k)
      val[j][k] = mono.scale[j] * in_ax.node(k) + mono.shift[j];
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d, 0.0);
  std::size_t dof = 0;
  do {
    for (std::size_t j = 0; j < d; ++j) p[j] = val[j][idx[mono.src[j]]];
    out.values[dof++] = interp_at(f, p.data(), method, bc);
  } while (next_index(idx, f.spec));
  return out;
}

}  // namespace weylcal
