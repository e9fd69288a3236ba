#include "weylcal/harmonics.hpp"

#include "weylcal/fft.hpp"
#include "weylcal/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace weylcal {

namespace {

std::vector<std::vector<unsigned>> multi_indices(std::size_t n, std::size_t degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  // lexicographic enumeration of compositions of `degree` into n parts
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == n) {
      cur[pos] = static_cast<unsigned>(left);
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      cur[pos] = static_cast<unsigned>(k);
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

cplx HarmonicPolynomial::evaluate(const std::vector<cplx>& z) const {
  if (z.size() != n) throw std::invalid_argument("harmonic evaluate: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t t = 0; t < coef.size(); ++t) {
    cplx term = coef[t];
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned k = 0; k < exps[t][i]; ++k) term *= z[i];
      for (unsigned k = 0; k < exps[t][n + i]; ++k) term *= std::conj(z[i]);
    }
    acc += term;
  }
  return acc;
}

std::size_t harmonic_dimension(std::size_t n, std::size_t alpha, std::size_t beta) {
  std::size_t full = binom(alpha + n - 1, n - 1) * binom(beta + n - 1, n - 1);
  if (alpha == 0 || beta == 0) return full;
  return full - binom(alpha + n - 2, n - 1) * binom(beta + n - 2, n - 1);
}

HarmonicPolynomial laplacian_apply(const HarmonicPolynomial& p) {
  HarmonicPolynomial out;
  out.n = p.n;
  out.alpha = (p.alpha > 0) ? p.alpha - 1 : 0;
  out.beta = (p.beta > 0) ? p.beta - 1 : 0;
  std::map<std::vector<unsigned>, cplx> acc;
  for (std::size_t t = 0; t < p.coef.size(); ++t) {
    for (std::size_t i = 0; i < p.n; ++i) {
      unsigned a = p.exps[t][i], b = p.exps[t][p.n + i];
      if (a == 0 || b == 0) continue;
      std::vector<unsigned> e = p.exps[t];
      e[i] -= 1;
      e[p.n + i] -= 1;
      acc[e] += static_cast<double>(a) * static_cast<double>(b) * p.coef[t];
    }
  }
  for (const auto& [e, c] : acc) {
    out.exps.push_back(e);
    out.coef.push_back(c);
  }
  return out;
}

cplx harmonic_inner(const HarmonicPolynomial& p, const HarmonicPolynomial& q) {
  if (p.n != q.n) throw std::invalid_argument("harmonic_inner: dimension mismatch");
  std::size_t n = p.n;
  cplx acc = 0.0;
  std::vector<std::size_t> u(n), v(n);
  for (std::size_t s = 0; s < p.coef.size(); ++s) {
    for (std::size_t t = 0; t < q.coef.size(); ++t) {
      // p_s conj(q_t) = c z^{a+b'} conj(z)^{b+a'}; moment is diagonal
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i) {
        u[i] = p.exps[s][i] + q.exps[t][n + i];
        v[i] = p.exps[s][n + i] + q.exps[t][i];
        match = (u[i] == v[i]);
      }
      if (!match) continue;
      acc += p.coef[s] * std::conj(q.coef[t]) * sphere_monomial_moment(n, u, v);
    }
  }
  return acc;
}

std::vector<HarmonicPolynomial> harmonic_basis(std::size_t n, std::size_t alpha,
                                               std::size_t beta) {
  if (n < 1) throw std::invalid_argument("harmonic_basis: n must be >= 1");
  auto A = multi_indices(n, alpha);
  auto B = multi_indices(n, beta);
  std::size_t cols = A.size() * B.size();

  std::vector<HarmonicPolynomial> monos(cols);
  for (std::size_t ia = 0; ia < A.size(); ++ia) {
    for (std::size_t ib = 0; ib < B.size(); ++ib) {
      HarmonicPolynomial& m = monos[ia * B.size() + ib];
      m.n = n;
      m.alpha = alpha;
      m.beta = beta;
      std::vector<unsigned> e(2 * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        e[i] = A[ia][i];
        e[n + i] = B[ib][i];
      }
      m.exps.push_back(e);
      m.coef.push_back(1.0);
    }
  }

  Eigen::MatrixXd kernel;
  if (alpha == 0 || beta == 0) {
    kernel = Eigen::MatrixXd::Identity(cols, cols);
  } else {
    auto Alo = multi_indices(n, alpha - 1);
    auto Blo = multi_indices(n, beta - 1);
    std::map<std::vector<unsigned>, std::size_t> row_of;
    for (std::size_t ia = 0; ia < Alo.size(); ++ia) {
      for (std::size_t ib = 0; ib < Blo.size(); ++ib) {
        std::vector<unsigned> e(2 * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          e[i] = Alo[ia][i];
          e[n + i] = Blo[ib][i];
        }
        row_of[e] = ia * Blo.size() + ib;
      }
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(Alo.size() * Blo.size(), cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = monos[c].exps[0];
      for (std::size_t i = 0; i < n; ++i) {
        if (e[i] == 0 || e[n + i] == 0) continue;
        std::vector<unsigned> lo = e;
        lo[i] -= 1;
        lo[n + i] -= 1;
        L(row_of.at(lo), c) += static_cast<double>(e[i]) * static_cast<double>(e[n + i]);
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
    kernel = lu.kernel();
    if (lu.dimensionOfKernel() == 0) return {};
  }

  std::size_t d = kernel.cols();
  if (harmonic_dimension(n, alpha, beta) != d)
    throw std::runtime_error("harmonic_basis: kernel rank disagrees with the dimension formula");
  if (d == 0) return {};

  std::vector<HarmonicPolynomial> raw(d);
  for (std::size_t j = 0; j < d; ++j) {
    raw[j].n = n;
    raw[j].alpha = alpha;
    raw[j].beta = beta;
    for (std::size_t c = 0; c < cols; ++c) {
      double w = kernel(c, j);
      if (w == 0.0) continue;
      raw[j].exps.push_back(monos[c].exps[0]);
      raw[j].coef.push_back(w);
    }
  }

  Eigen::MatrixXcd G(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) G(i, j) = harmonic_inner(raw[i], raw[j]);
  // G = L L^H, new basis = raw · L^{-H} has identity Gram
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("harmonic_basis: Gram matrix not positive definite");
  Eigen::MatrixXcd Linv =
      llt.matrixL().solve(Eigen::MatrixXcd::Identity(d, d));  // L^{-1}
  std::vector<HarmonicPolynomial> out(d);
  for (std::size_t j = 0; j < d; ++j) {
    out[j].n = n;
    out[j].alpha = alpha;
    out[j].beta = beta;
    std::map<std::vector<unsigned>, cplx> acc;
    for (std::size_t i = 0; i < d; ++i) {
      cplx w = std::conj(Linv(j, i));  // column j of L^{-H}
      if (w == 0.0) continue;
      for (std::size_t t = 0; t < raw[i].coef.size(); ++t) acc[raw[i].exps[t]] += w * raw[i].coef[t];
    }
    for (const auto& [e, c] : acc) {
      if (std::abs(c) < 1e-14) continue;
      out[j].exps.push_back(e);
      out[j].coef.push_back(c);
    }
  }
  return out;
}

std::string harmonic_to_text(const HarmonicPolynomial& p) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t t = 0; t < p.coef.size(); ++t) {
    for (std::size_t i = 0; i < 2 * p.n; ++i) os << p.exps[t][i] << ' ';
    os << p.coef[t].real() << ' ' << p.coef[t].imag() << '\n';
  }
  return os.str();
}

HarmonicPolynomial harmonic_from_text(const std::string& text, std::size_t n) {
  HarmonicPolynomial p;
  p.n = n;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<unsigned> e(2 * n);
    for (auto& v : e)
      if (!(ls >> v)) throw std::invalid_argument("harmonic_from_text: bad exponent line");
    double re, im;
    if (!(ls >> re >> im)) throw std::invalid_argument("harmonic_from_text: bad coefficient");
    p.exps.push_back(e);
    p.coef.push_back(cplx{re, im});
  }
  if (!p.exps.empty()) {
    p.alpha = 0;
    p.beta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      p.alpha += p.exps[0][i];
      p.beta += p.exps[0][n + i];
    }
  }
  return p;
}

cplx homogeneous_extension(const HarmonicPolynomial& p, cplx mu, const double* X) {
  std::vector<cplx> z(p.n);
  double len2 = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    z[i] = cplx{X[i], X[p.n + i]};
    len2 += X[i] * X[i] + X[p.n + i] * X[p.n + i];
  }
  cplx deg = -(static_cast<double>(p.n) + static_cast<double>(p.alpha + p.beta)) - mu;
  return p.evaluate(z) * std::exp(0.5 * deg * std::log(len2));
}

std::vector<cplx> realize_k_picture(const HarmonicPolynomial& p, const SphereGrid& sphere) {
  if (sphere.n != p.n) throw std::invalid_argument("realize_k_picture: dimension mismatch");
  std::vector<cplx> out(sphere.size());
  std::vector<cplx> z(p.n);
  for (std::size_t k = 0; k < sphere.size(); ++k) {
    const double* X = sphere.node(k);
    for (std::size_t i = 0; i < p.n; ++i) z[i] = cplx{X[i], X[p.n + i]};
    out[k] = p.evaluate(z);
  }
  return out;
}

namespace {

std::size_t m_of_grid(const GridSpec& grid) {
  if (grid.rank() % 2 == 0 || grid.rank() < 1)
    throw std::invalid_argument("grid rank must be 1 + 2m");
  return (grid.rank() - 1) / 2;
}

}  // namespace

SampledField realize_n_picture(const HarmonicPolynomial& p, const PrincipalSeriesParams& pr,
                               const GridSpec& grid) {
  std::size_t m = m_of_grid(grid);
  if (pr.n != m + 1 || p.n != pr.n)
    throw std::invalid_argument("realize_n_picture: n must equal m + 1");
  if (static_cast<int>((p.alpha + p.beta) % 2) != (pr.delta & 1))
    throw std::invalid_argument("realize_n_picture: delta does not match the bidegree parity");
  SampledField f(grid);
  std::vector<std::size_t> idx(grid.rank(), 0);
  std::vector<double> X(2 * pr.n);
  std::size_t dof = 0;
  do {
    auto c = grid.coords(idx);
    X[0] = 1.0;
    X[pr.n] = 2.0 * c[0];
    for (std::size_t j = 0; j < m; ++j) {
      X[1 + j] = c[1 + j];
      X[pr.n + 1 + j] = c[1 + m + j];
    }
    f.values[dof++] = homogeneous_extension(p, pr.mu, X.data());
  } while (next_index(idx, grid));
  return f;
}

SampledField n_to_u(const SampledField& f) {
  std::size_t m = m_of_grid(f.spec);
  SampledField g = fourier_axis(f, 0, FourierDirection::Forward);
  for (std::size_t j = 0; j < m; ++j) g = fourier_axis(g, 1 + m + j, FourierDirection::Forward);
  return g;
}

SampledField realize_u_picture(const HarmonicPolynomial& p, const PrincipalSeriesParams& pr,
                               const GridSpec& grid) {
  return n_to_u(realize_n_picture(p, pr, grid));
}

SampledField special_vector(SpecialVectorKind kind, std::size_t m, const GridSpec& grid,
                            const std::vector<cplx>& b) {
  if (grid.rank() != 1 + 2 * m)
    throw std::invalid_argument("special_vector: grid rank must be 1 + 2m");
  bool needs_b = (kind == SpecialVectorKind::HMinusB || kind == SpecialVectorKind::PhiB);
  if (needs_b && b.size() != m + 1)
    throw std::invalid_argument("special_vector: b must have m + 1 entries");

  SampledField f(grid);
  std::vector<std::size_t> idx(grid.rank(), 0);
  std::size_t dof = 0;
  do {
    auto c = grid.coords(idx);
    double t = c[0];
    const double* x = c.data() + 1;
    const double* xi = c.data() + 1 + m;
    double x2 = 0.0, xi2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      x2 += x[j] * x[j];
      xi2 += xi[j] * xi[j];
    }
    double q = 1.0 + 4.0 * t * t + x2 + xi2;
    cplx v;
    switch (kind) {
      case SpecialVectorKind::HPlus:
      case SpecialVectorKind::F00:
        v = std::pow(q, -0.5 * (m + 1));
        break;
      case SpecialVectorKind::F01:
        v = std::pow(q, -0.5 * (m + 2)) * cplx{x[0], -xi[0]};
        break;
      case SpecialVectorKind::F10:
        v = std::pow(q, -0.5 * (m + 2)) * cplx{x[0], xi[0]};
        break;
      case SpecialVectorKind::F11:
        v = std::pow(q, -0.5 * (m + 3)) *
            (1.0 + 4.0 * t * t - x[0] * x[0] - xi[0] * xi[0]);
        break;
      case SpecialVectorKind::HMinusB: {
        cplx lin = b[0] * cplx{1.0, -2.0 * t};
        for (std::size_t j = 0; j < m; ++j) lin += b[1 + j] * cplx{x[j], -xi[j]};
        v = std::pow(q, -0.5 * (m + 2)) * lin;
        break;
      }
      case SpecialVectorKind::Psi:
      case SpecialVectorKind::PhiB: {
        // U-grid coordinates (ρ, x, η)
        double rho = t;
        const double* eta = xi;
        double P = std::sqrt(1.0 + x2);
        double Q = std::sqrt(0.25 * rho * rho + xi2);
        if (kind == SpecialVectorKind::Psi) {
          v = P * Q;
        } else {
          cplx c1 = b[0];
          cplx c2 = b[0] * (0.5 * rho);
          for (std::size_t j = 0; j < m; ++j) {
            c1 += b[1 + j] * x[j];
            c2 += b[1 + j] * eta[j];
          }
          v = Q * c1 - P * c2;  // ω((P,Q), (c1,c2)) = Q c1 − P c2
        }
        break;
      }
    }
    f.values[dof++] = v;
  } while (next_index(idx, grid));
  return f;
}

SampledField principal_series_act(const PrincipalSeriesParams& pr, const HeisenbergElement& g,
                                  const SampledField& f, InterpMethod fallback) {
  if (!pr.unitary_axis()) throw std::invalid_argument("principal_series_act: mu must be iλ");
  std::size_t m = m_of_grid(f.spec);
  if (g.m() != m) throw std::invalid_argument("principal_series_act: element size mismatch");

  // stage 1: X-shift, f1(t, X) = f(t, X - A)
  std::vector<double> sh(f.spec.rank(), 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    sh[1 + j] = -g.a[j];
    sh[1 + m + j] = -g.alpha[j];
  }
  AffineMap shift = AffineMap::translation(sh);
  SampledField f1 = translation_grid_exact(f.spec, sh)
                        ? resample_affine(f, shift, InterpMethod::ExactIndex, Boundary::Wrap)
                        : resample_affine(f, shift, fallback, Boundary::Wrap);

  // stage 2: per-column t-shift by σ(X) = s + ½ω(A, X)
  const AxisSpec& tax = f.spec.axes[0];
  std::size_t Nt = tax.N;
  auto strides = f.spec.strides();
  std::size_t tstride = strides[0];
  GridSpec tline({tax});
  GridSpec xgrid(std::vector<AxisSpec>(f.spec.axes.begin() + 1, f.spec.axes.end()));
  SampledField out(f.spec);
  SampledField line(tline);
  std::vector<std::size_t> idx(xgrid.rank(), 0);
  do {
    auto c = xgrid.coords(idx);
    double sigma = g.s;
    for (std::size_t j = 0; j < m; ++j)
      sigma += 0.5 * (g.alpha[j] * c[j] - g.a[j] * c[m + j]);
    std::size_t base = 0;
    for (std::size_t j = 0; j < xgrid.rank(); ++j) base += idx[j] * strides[1 + j];
    for (std::size_t k = 0; k < Nt; ++k) line.values[k] = f1.values[base + k * tstride];
    AffineMap tshift = AffineMap::translation({-sigma});
    SampledField shifted =
        translation_grid_exact(tline, {-sigma})
            ? resample_affine(line, tshift, InterpMethod::ExactIndex, Boundary::Wrap)
            : resample_affine(line, tshift, fallback, Boundary::Wrap);
    for (std::size_t k = 0; k < Nt; ++k) out.values[base + k * tstride] = shifted.values[k];
  } while (next_index(idx, xgrid));
  return out;
}

SampledField principal_series_act_dilation(const PrincipalSeriesParams& pr, double a,
                                           const SampledField& f, InterpMethod fallback) {
  if (!pr.unitary_axis()) throw std::invalid_argument("principal_series_act: mu must be iλ");
  if (!(a > 0.0)) throw std::invalid_argument("principal_series_act: dilation must be positive");
  std::size_t m = m_of_grid(f.spec);
  double lambda = pr.mu.imag();
  std::vector<double> scales(f.spec.rank(), 1.0 / a);
  scales[0] = 1.0 / (a * a);
  AffineMap map = AffineMap::diagonal(scales, std::vector<double>(f.spec.rank(), 0.0));
  SampledField out = resample_affine(f, map, fallback, Boundary::Wrap);
  cplx mult = std::exp(cplx{-(1.0 + static_cast<double>(m)), -lambda} * std::log(a));
  kernels::active().scale(out.values.data(), mult, out.values.data(), out.values.size());
  return out;
}

}  // namespace weylcal
