#include "weylcal/heisenberg.hpp"

#include "weylcal/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylcal {

namespace {

constexpr double kPi = std::numbers::pi;

void check_same_m(const HeisenbergElement& g, const HeisenbergElement& h) {
  if (g.a.size() != g.alpha.size() || h.a.size() != h.alpha.size() || g.m() != h.m())
    throw std::invalid_argument("heisenberg: dimension mismatch");
}

// Per-axis unimodular factor tables for a separable phase Π_j e^{i c_j x_j}.
std::vector<std::vector<cplx>> phase_tables(const GridSpec& spec,
                                            const std::vector<double>& c) {
  std::vector<std::vector<cplx>> tab(spec.rank());
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    const AxisSpec& ax = spec.axes[j];
    tab[j].resize(ax.N);
    for (std::size_t k = 0; k < ax.N; ++k) tab[j][k] = std::polar(1.0, c[j] * ax.node(k));
  }
  return tab;
}

void multiply_separable(SampledField& f, cplx c0, const std::vector<std::vector<cplx>>& tab) {
  std::vector<std::size_t> idx(f.spec.rank(), 0);
  std::size_t dof = 0;
  do {
    cplx ph = c0;
    for (std::size_t j = 0; j < tab.size(); ++j) ph *= tab[j][idx[j]];
    f.values[dof++] *= ph;
  } while (next_index(idx, f.spec));
}

struct MonomialMatrix {
  std::vector<std::size_t> src;
  std::vector<double> scale;
};

MonomialMatrix monomial_pattern(const Eigen::MatrixXd& A) {
  auto d = static_cast<std::size_t>(A.rows());
  if (A.cols() != A.rows()) throw std::invalid_argument("matrix must be square");
  MonomialMatrix out;
  out.src.assign(d, 0);
  out.scale.assign(d, 0.0);
  std::vector<int> used(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t nz = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) {
        ++nz;
        out.src[i] = j;
        out.scale[i] = A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    if (nz != 1 || out.scale[i] == 0.0)
      throw std::invalid_argument("matrix action requires a monomial matrix");
    used[out.src[i]] += 1;
  }
  for (std::size_t j = 0; j < d; ++j)
    if (used[j] != 1) throw std::invalid_argument("matrix action requires a monomial matrix");
  return out;
}

MonomialMatrix monomial_inverse(const MonomialMatrix& p) {
  MonomialMatrix inv;
  inv.src.assign(p.src.size(), 0);
  inv.scale.assign(p.src.size(), 0.0);
  for (std::size_t i = 0; i < p.src.size(); ++i) {
    inv.src[p.src[i]] = i;
    inv.scale[p.src[i]] = 1.0 / p.scale[i];
  }
  return inv;
}

SampledField resample_exact_or(const SampledField& f, const AffineMap& map,
                               InterpMethod fallback) {
  try {
    return resample_affine(f, map, InterpMethod::ExactIndex, Boundary::Wrap);
  } catch (const std::invalid_argument&) {
    return resample_affine(f, map, fallback, Boundary::Wrap);
  }
}

}  // namespace

double symplectic_form(const std::vector<double>& X, const std::vector<double>& Y) {
  if (X.size() != Y.size() || X.size() % 2 != 0)
    throw std::invalid_argument("symplectic_form: need packed vectors of equal even size");
  std::size_t m = X.size() / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += X[m + i] * Y[i] - X[i] * Y[m + i];
  return acc;
}

std::vector<double> pack_pair(const std::vector<double>& a, const std::vector<double>& alpha) {
  std::vector<double> X(a);
  X.insert(X.end(), alpha.begin(), alpha.end());
  return X;
}

HeisenbergElement compose(const HeisenbergElement& g, const HeisenbergElement& h) {
  check_same_m(g, h);
  HeisenbergElement out;
  out.s = g.s + h.s + 0.5 * symplectic_form(pack_pair(g.a, g.alpha), pack_pair(h.a, h.alpha));
  out.a.resize(g.m());
  out.alpha.resize(g.m());
  for (std::size_t i = 0; i < g.m(); ++i) {
    out.a[i] = g.a[i] + h.a[i];
    out.alpha[i] = g.alpha[i] + h.alpha[i];
  }
  return out;
}

HeisenbergElement inverse(const HeisenbergElement& g) {
  HeisenbergElement out = g;
  out.s = -out.s;
  for (auto& v : out.a) v = -v;
  for (auto& v : out.alpha) v = -v;
  return out;
}

AutomorphismSpec AutomorphismSpec::symplectic(const Eigen::MatrixXd& T) {
  if (T.rows() != T.cols() || T.rows() % 2 != 0)
    throw std::invalid_argument("symplectic automorphism: T must be square of even size");
  auto d = static_cast<std::size_t>(T.rows());
  std::vector<double> ei(d, 0.0), ej(d, 0.0), Tei(d), Tej(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      std::fill(ei.begin(), ei.end(), 0.0);
      std::fill(ej.begin(), ej.end(), 0.0);
      ei[i] = 1.0;
      ej[j] = 1.0;
      for (std::size_t r = 0; r < d; ++r) {
        Tei[r] = T(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
        Tej[r] = T(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
      }
      if (std::abs(symplectic_form(Tei, Tej) - symplectic_form(ei, ej)) > 1e-12)
        throw std::invalid_argument("symplectic automorphism: T does not preserve the form");
    }
  }
  AutomorphismSpec out;
  out.kind = Kind::Symplectic;
  out.T = T;
  return out;
}

AutomorphismSpec AutomorphismSpec::inner(HeisenbergElement base) {
  AutomorphismSpec out;
  out.kind = Kind::Inner;
  out.base = std::move(base);
  return out;
}

AutomorphismSpec AutomorphismSpec::dilation(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("dilation automorphism: r must be positive");
  AutomorphismSpec out;
  out.kind = Kind::Dilation;
  out.param = r;
  return out;
}

AutomorphismSpec AutomorphismSpec::inversion() {
  AutomorphismSpec out;
  out.kind = Kind::Inversion;
  return out;
}

AutomorphismSpec AutomorphismSpec::tau_rho(double rho) {
  if (rho == 0.0) throw std::invalid_argument("tau automorphism: rho must be nonzero");
  AutomorphismSpec out;
  out.kind = Kind::TauRho;
  out.param = rho;
  return out;
}

AutomorphismSpec AutomorphismSpec::psi_rho(double rho) {
  if (rho == 0.0) throw std::invalid_argument("psi automorphism: rho must be nonzero");
  AutomorphismSpec out;
  out.kind = Kind::PsiRho;
  out.param = rho;
  return out;
}

HeisenbergElement apply_automorphism(const AutomorphismSpec& tau, const HeisenbergElement& g) {
  std::size_t m = g.m();
  HeisenbergElement out = g;
  switch (tau.kind) {
    case AutomorphismSpec::Kind::Symplectic: {
      if (static_cast<std::size_t>(tau.T.rows()) != 2 * m)
        throw std::invalid_argument("symplectic automorphism: dimension mismatch");
      std::vector<double> A = pack_pair(g.a, g.alpha);
      for (std::size_t r = 0; r < 2 * m; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < 2 * m; ++c)
          acc += tau.T(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * A[c];
        if (r < m)
          out.a[r] = acc;
        else
          out.alpha[r - m] = acc;
      }
      return out;
    }
    case AutomorphismSpec::Kind::Inner:
      out.s = g.s - symplectic_form(pack_pair(g.a, g.alpha),
                                    pack_pair(tau.base.a, tau.base.alpha));
      return out;
    case AutomorphismSpec::Kind::Dilation: {
      double r = tau.param;
      out.s = r * r * g.s;
      for (auto& v : out.a) v *= r;
      for (auto& v : out.alpha) v *= r;
      return out;
    }
    case AutomorphismSpec::Kind::Inversion:
      out.s = -g.s;
      out.a = g.alpha;
      out.alpha = g.a;
      return out;
    case AutomorphismSpec::Kind::TauRho: {
      double rho = tau.param;
      out.s = rho * g.s / 4.0;
      for (auto& v : out.alpha) v *= rho / 4.0;
      return out;
    }
    case AutomorphismSpec::Kind::PsiRho: {
      double rho = tau.param;
      out.s = g.s / rho;
      for (auto& v : out.a) v *= 0.5;
      for (auto& v : out.alpha) v *= 2.0 / rho;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

HeisenbergElement apply_automorphism_inverse(const AutomorphismSpec& tau,
                                             const HeisenbergElement& g) {
  switch (tau.kind) {
    case AutomorphismSpec::Kind::Symplectic: {
      Eigen::VectorXd A(static_cast<Eigen::Index>(2 * g.m()));
      std::vector<double> packed = pack_pair(g.a, g.alpha);
      for (std::size_t i = 0; i < packed.size(); ++i)
        A(static_cast<Eigen::Index>(i)) = packed[i];
      Eigen::VectorXd sol = tau.T.colPivHouseholderQr().solve(A);
      HeisenbergElement out = g;
      for (std::size_t i = 0; i < g.m(); ++i) {
        out.a[i] = sol(static_cast<Eigen::Index>(i));
        out.alpha[i] = sol(static_cast<Eigen::Index>(g.m() + i));
      }
      return out;
    }
    case AutomorphismSpec::Kind::Inner: {
      HeisenbergElement out = g;
      out.s = g.s + symplectic_form(pack_pair(g.a, g.alpha),
                                    pack_pair(tau.base.a, tau.base.alpha));
      return out;
    }
    case AutomorphismSpec::Kind::Dilation:
      return apply_automorphism(AutomorphismSpec::dilation(1.0 / tau.param), g);
    case AutomorphismSpec::Kind::Inversion:
      return apply_automorphism(tau, g);
    case AutomorphismSpec::Kind::TauRho:
      return apply_automorphism(AutomorphismSpec::tau_rho(16.0 / tau.param), g);
    case AutomorphismSpec::Kind::PsiRho: {
      double rho = tau.param;
      HeisenbergElement out = g;
      out.s = rho * g.s;
      for (auto& v : out.a) v *= 2.0;
      for (auto& v : out.alpha) v *= rho / 2.0;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

MetGenerator MetGenerator::fourier_j() {
  MetGenerator out;
  out.kind = Kind::FourierJ;
  return out;
}

MetGenerator MetGenerator::shear(const Eigen::MatrixXd& B) {
  if (B.rows() != B.cols()) throw std::invalid_argument("shear: B must be square");
  if ((B - B.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("shear: B must be symmetric");
  MetGenerator out;
  out.kind = Kind::Shear;
  out.mat = B;
  return out;
}

MetGenerator MetGenerator::diag_dilation(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("dilation: A must be square");
  monomial_pattern(A);  // action is implemented for monomial A; validates invertibility
  MetGenerator out;
  out.kind = Kind::DiagDilation;
  out.mat = A;
  return out;
}

Eigen::MatrixXd MetGenerator::symplectic_matrix(std::size_t m) const {
  auto mm = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(2 * mm, 2 * mm);
  switch (kind) {
    case Kind::FourierJ:
      T.block(0, mm, mm, mm) = -Eigen::MatrixXd::Identity(mm, mm);
      T.block(mm, 0, mm, mm) = Eigen::MatrixXd::Identity(mm, mm);
      break;
    case Kind::Shear:
      if (mat.rows() != mm) throw std::invalid_argument("shear: dimension mismatch");
      T.block(0, 0, mm, mm) = Eigen::MatrixXd::Identity(mm, mm);
      T.block(mm, mm, mm, mm) = Eigen::MatrixXd::Identity(mm, mm);
      T.block(mm, 0, mm, mm) = mat;
      break;
    case Kind::DiagDilation:
      if (mat.rows() != mm) throw std::invalid_argument("dilation: dimension mismatch");
      T.block(0, 0, mm, mm) = mat;
      T.block(mm, mm, mm, mm) = mat.inverse().transpose();
      break;
  }
  return T;
}

bool translation_grid_exact(const GridSpec& spec, const std::vector<double>& shift) {
  if (shift.size() != spec.rank())
    throw std::invalid_argument("translation_grid_exact: rank mismatch");
  for (std::size_t j = 0; j < shift.size(); ++j) {
    double r = shift[j] / spec.axes[j].h();
    if (std::abs(r - std::round(r)) > 1e-9) return false;
  }
  return true;
}

SampledField schrodinger_act(const std::optional<AutomorphismSpec>& twist,
                             const HeisenbergElement& g, const SampledField& u,
                             InterpMethod fallback) {
  HeisenbergElement ge = twist ? apply_automorphism_inverse(*twist, g) : g;
  std::size_t m = ge.m();
  if (u.spec.rank() != m) throw std::invalid_argument("schrodinger_act: field rank must be m");

  std::vector<double> minus_a(m);
  for (std::size_t i = 0; i < m; ++i) minus_a[i] = -ge.a[i];
  InterpMethod method =
      translation_grid_exact(u.spec, ge.a) ? InterpMethod::ExactIndex : fallback;
  SampledField out =
      resample_affine(u, AffineMap::translation(minus_a), method, Boundary::Wrap);

  double aalpha = 0.0;
  for (std::size_t i = 0; i < m; ++i) aalpha += ge.a[i] * ge.alpha[i];
  cplx c0 = std::polar(1.0, 2.0 * kPi * (ge.s - 0.5 * aalpha));
  std::vector<double> coef(m);
  for (std::size_t i = 0; i < m; ++i) coef[i] = 2.0 * kPi * ge.alpha[i];
  multiply_separable(out, c0, phase_tables(u.spec, coef));
  return out;
}

SampledField metaplectic_act(const MetGenerator& gen, const SampledField& u,
                             InterpMethod fallback) {
  switch (gen.kind) {
    case MetGenerator::Kind::FourierJ: {
      for (const auto& ax : u.spec.axes)
        if (!axes_close(ax, ax.dual()))
          throw std::invalid_argument("metaplectic transform generator needs a self-dual grid");
      SampledField out = fourier_all(u, FourierDirection::Inverse);
      out.spec = u.spec;
      return out;
    }
    case MetGenerator::Kind::Shear: {
      std::size_t m = u.spec.rank();
      if (static_cast<std::size_t>(gen.mat.rows()) != m)
        throw std::invalid_argument("shear: dimension mismatch");
      for (std::size_t i = 0; i < m; ++i) {
        double reach = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          reach += std::abs(gen.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) *
                   u.spec.axes[j].L;
        if (!(reach * u.spec.axes[i].h() < 0.5))
          throw NumericalGuard("shear chirp exceeds the Nyquist rate of the grid");
      }
      SampledField out = u;
      std::vector<std::size_t> idx(m, 0);
      std::size_t dof = 0;
      do {
        auto x = u.spec.coords(idx);
        double q = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            q += gen.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j] * x[i];
        out.values[dof++] *= std::polar(1.0, kPi * q);
      } while (next_index(idx, u.spec));
      return out;
    }
    case MetGenerator::Kind::DiagDilation: {
      std::size_t m = u.spec.rank();
      if (static_cast<std::size_t>(gen.mat.rows()) != m)
        throw std::invalid_argument("dilation: dimension mismatch");
      MonomialMatrix p = monomial_pattern(gen.mat);
      MonomialMatrix inv = monomial_inverse(p);
      double det = 1.0;
      for (double sc : p.scale) det *= std::abs(sc);
      AffineMap map = AffineMap::monomial(inv.src, inv.scale, std::vector<double>(m, 0.0));
      SampledField out = resample_exact_or(u, map, fallback);
      cplx norm(1.0 / std::sqrt(det), 0.0);
      for (auto& v : out.values) v *= norm;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

SampledField varpi_act(double rho, const HeisenbergElement& g, const SampledField& h,
                       InterpMethod fallback) {
  if (rho == 0.0) throw std::invalid_argument("varpi_act: rho must be nonzero");
  std::size_t m = g.m();
  if (h.spec.rank() != 2 * m)
    throw std::invalid_argument("varpi_act: field rank must be 2m");

  std::vector<double> shift = pack_pair(g.a, g.alpha);
  std::vector<double> minus(shift);
  for (auto& v : minus) v = -v;
  InterpMethod method =
      translation_grid_exact(h.spec, shift) ? InterpMethod::ExactIndex : fallback;
  SampledField out = resample_affine(h, AffineMap::translation(minus), method, Boundary::Wrap);

  // e^{-2πiρ s} e^{iπρ <ξ,a>} e^{-iπρ <x,α>}
  cplx c0 = std::polar(1.0, -2.0 * kPi * rho * g.s);
  std::vector<double> coef(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    coef[i] = -kPi * rho * g.alpha[i];
    coef[m + i] = kPi * rho * g.a[i];
  }
  multiply_separable(out, c0, phase_tables(h.spec, coef));
  return out;
}

SampledField varpi_m0_act(const MetGenerator& gen, const SampledField& h) {
  if (h.spec.rank() % 2 != 0) throw std::invalid_argument("varpi_m0_act: field rank must be 2m");
  std::size_t m = h.spec.rank() / 2;
  switch (gen.kind) {
    case MetGenerator::Kind::FourierJ: {
      // J^{-1}(x, ξ) = (ξ, -x)
      std::vector<std::size_t> src(2 * m);
      std::vector<double> scale(2 * m);
      for (std::size_t i = 0; i < m; ++i) {
        src[i] = m + i;
        scale[i] = 1.0;
        src[m + i] = i;
        scale[m + i] = -1.0;
      }
      AffineMap map = AffineMap::monomial(src, scale, std::vector<double>(2 * m, 0.0));
      return resample_affine(h, map, InterpMethod::ExactIndex, Boundary::Wrap);
    }
    case MetGenerator::Kind::Shear:
      return shear_substitute(h, gen.mat);
    case MetGenerator::Kind::DiagDilation: {
      // T^{-1}(x, ξ) = (A^{-1} x, A^T ξ)
      MonomialMatrix p = monomial_pattern(gen.mat);
      MonomialMatrix inv = monomial_inverse(p);
      std::vector<std::size_t> src(2 * m);
      std::vector<double> scale(2 * m);
      for (std::size_t i = 0; i < m; ++i) {
        src[i] = inv.src[i];
        scale[i] = inv.scale[i];
      }
      // (A^T ξ)_j = A(i, j) ξ_i for the unique i with p.src[i] = j
      for (std::size_t i = 0; i < m; ++i) {
        src[m + p.src[i]] = m + i;
        scale[m + p.src[i]] = p.scale[i];
      }
      AffineMap map = AffineMap::monomial(src, scale, std::vector<double>(2 * m, 0.0));
      return resample_exact_or(h, map, InterpMethod::Cubic);
    }
  }
  throw std::logic_error("unreachable");
}

SampledField shear_substitute(const SampledField& f, const Eigen::MatrixXd& B) {
  if (f.spec.rank() % 2 != 0)
    throw std::invalid_argument("shear_substitute: field rank must be 2m");
  std::size_t m = f.spec.rank() / 2;
  if (static_cast<std::size_t>(B.rows()) != m || B.cols() != B.rows())
    throw std::invalid_argument("shear_substitute: dimension mismatch");

  SampledField g = f;
  for (std::size_t j = 0; j < m; ++j) g = fourier_axis(g, m + j, FourierDirection::Forward);
  // multiply by e^{-2πi <Bx, t>} where t runs over the transformed ξ axes
  std::vector<std::size_t> idx(2 * m, 0);
  std::size_t dof = 0;
  do {
    auto c = g.spec.coords(idx);
    double q = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double bx = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        bx += B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * c[j];
      q += bx * c[m + i];
    }
    g.values[dof++] *= std::polar(1.0, -2.0 * kPi * q);
  } while (next_index(idx, g.spec));
  for (std::size_t j = 0; j < m; ++j) g = fourier_axis(g, m + j, FourierDirection::Inverse);
  g.spec = f.spec;
  return g;
}

}  // namespace weylcal
