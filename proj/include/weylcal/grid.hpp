#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylcal {

using cplx = std::complex<double>;

// Thrown when a computation detects that its own accuracy safeguards failed
// (truncated mass too large, resolution insufficient, ...). The CLI maps this
// to its own exit code, distinct from an ordinary check failure.
struct NumericalGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One uniform centered axis: N even samples x_k = -L + k*h on [-L, L), h = 2L/N.
struct AxisSpec {
  double L = 0.0;
  std::size_t N = 0;

  double h() const { return 2.0 * L / static_cast<double>(N); }
  double node(std::size_t k) const { return -L + h() * static_cast<double>(k); }
  // Frequency nodes of the transform along this axis: (j - N/2)/(2L), same N.
  AxisSpec dual() const { return AxisSpec{static_cast<double>(N) / (4.0 * L), N}; }

  bool operator==(const AxisSpec&) const = default;
};

bool axes_close(const AxisSpec& a, const AxisSpec& b, double rel = 1e-12);

struct GridSpec {
  std::vector<AxisSpec> axes;

  GridSpec() = default;
  explicit GridSpec(std::vector<AxisSpec> ax);

  std::size_t rank() const { return axes.size(); }
  std::size_t total() const;
  // Row-major strides, last axis fastest.
  std::vector<std::size_t> strides() const;
  // Product of spacings: the quadrature weight of one cell.
  double weight() const;
  std::vector<double> coords(const std::vector<std::size_t>& idx) const;

  bool operator==(const GridSpec&) const = default;
};

bool grids_close(const GridSpec& a, const GridSpec& b, double rel = 1e-12);

struct SampledField {
  GridSpec spec;
  std::vector<cplx> values;

  SampledField() = default;
  explicit SampledField(GridSpec s);

  cplx& at(const std::vector<std::size_t>& idx);
  const cplx& at(const std::vector<std::size_t>& idx) const;

  double norm2() const;  // weight * sum |v|^2
  double norm() const;
  cplx inner(const SampledField& other) const;  // weight * sum conj(this) * other
};

// Odometer increment over a grid's index set; returns false after the last index.
bool next_index(std::vector<std::size_t>& idx, const GridSpec& spec);

// Binary field files: <base>.json sidecar plus <base>.bin of interleaved
// little-endian re/im doubles in row-major order.
void save_field(const SampledField& f, const std::string& base);
SampledField load_field(const std::string& base);

}  // namespace weylcal
