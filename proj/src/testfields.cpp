#include "weylcal/testfields.hpp"

#include "weylcal/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace weylcal {

namespace {

constexpr double kPi = std::numbers::pi;

cplx gaussian_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double u1 = 1.0 - u(rng);  // (0, 1]
  double u2 = u(rng);
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

SampledField random_band_field(const GridSpec& spec, const TestFieldOptions& opt) {
  std::vector<AxisSpec> dual_axes;
  dual_axes.reserve(spec.rank());
  for (const auto& ax : spec.axes) dual_axes.push_back(ax.dual());
  SampledField G{GridSpec(dual_axes)};

  std::mt19937_64 rng(opt.seed);
  std::vector<std::size_t> idx(spec.rank(), 0);
  std::size_t dof = 0;
  std::size_t m = spec.rank() / 2;
  do {
    double env = 1.0;
    for (std::size_t j = 0; j < spec.rank(); ++j) {
      auto nj = static_cast<double>(spec.axes[j].N);
      double q = static_cast<double>(idx[j]) - 0.5 * nj;
      double cut = opt.band * 0.5 * nj;
      if (!(std::abs(q) < cut)) {
        env = 0.0;
        break;
      }
      double sig = opt.shape * cut;
      env *= std::exp(-0.5 * (q / sig) * (q / sig));
      if (opt.zero_axis >= 0 && j == static_cast<std::size_t>(opt.zero_axis) && q == 0.0)
        env = 0.0;
    }
    if (opt.diamond && env != 0.0 && spec.rank() % 2 == 0) {
      for (std::size_t j = 0; j < m; ++j) {
        double q1 = std::abs(static_cast<double>(idx[j]) - 0.5 * static_cast<double>(spec.axes[j].N));
        double q2 = std::abs(static_cast<double>(idx[m + j]) -
                             0.5 * static_cast<double>(spec.axes[m + j].N));
        if (!(q1 + q2 < 0.5 * static_cast<double>(spec.axes[j].N))) {
          env = 0.0;
          break;
        }
      }
    }
    cplx z = gaussian_pair(rng);  // always drawn, so the stream is layout-stable
    G.values[dof++] = env * z;
  } while (next_index(idx, G.spec));

  SampledField f = fourier_all(G, FourierDirection::Inverse);
  f.spec = spec;
  if (opt.window > 0.0) {
    std::fill(idx.begin(), idx.end(), 0);
    dof = 0;
    do {
      auto x = spec.coords(idx);
      double r2 = 0.0;
      for (std::size_t j = 0; j < spec.rank(); ++j) {
        double w = opt.window * spec.axes[j].L;
        r2 += (x[j] / w) * (x[j] / w);
      }
      f.values[dof++] *= std::exp(-kPi * r2);
    } while (next_index(idx, spec));
  }
  double n = f.norm();
  if (n > 0.0)
    for (auto& v : f.values) v /= n;
  return f;
}

}  // namespace weylcal
