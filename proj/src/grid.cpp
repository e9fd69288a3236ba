#include "weylcal/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "weylcal/kernels.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts need byte swapping");

namespace weylcal {

bool axes_close(const AxisSpec& a, const AxisSpec& b, double rel) {
  return a.N == b.N && std::abs(a.L - b.L) <= rel * std::max(std::abs(a.L), std::abs(b.L));
}

GridSpec::GridSpec(std::vector<AxisSpec> ax) : axes(std::move(ax)) {
  for (const auto& a : axes) {
    if (!(a.L > 0.0)) throw std::invalid_argument("axis extent must be positive");
    if (a.N < 2 || a.N % 2 != 0) throw std::invalid_argument("axis sample count must be even and >= 2");
  }
}

std::size_t GridSpec::total() const {
  std::size_t t = 1;
  for (const auto& a : axes) t *= a.N;
  return t;
}

std::vector<std::size_t> GridSpec::strides() const {
  std::vector<std::size_t> s(axes.size(), 1);
  for (std::size_t i = axes.size(); i-- > 1;) s[i - 1] = s[i] * axes[i].N;
  return s;
}

double GridSpec::weight() const {
  double w = 1.0;
  for (const auto& a : axes) w *= a.h();
  return w;
}

std::vector<double> GridSpec::coords(const std::vector<std::size_t>& idx) const {
  std::vector<double> x(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) x[i] = axes[i].node(idx[i]);
  return x;
}

bool grids_close(const GridSpec& a, const GridSpec& b, double rel) {
  if (a.rank() != b.rank()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!axes_close(a.axes[i], b.axes[i], rel)) return false;
  return true;
}

SampledField::SampledField(GridSpec s) : spec(std::move(s)), values(spec.total(), cplx(0, 0)) {}

cplx& SampledField::at(const std::vector<std::size_t>& idx) {
  auto st = spec.strides();
  std::size_t off = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) off += idx[i] * st[i];
  return values[off];
}

const cplx& SampledField::at(const std::vector<std::size_t>& idx) const {
  return const_cast<SampledField*>(this)->at(idx);
}

double SampledField::norm2() const {
  return spec.weight() * kernels::active().sum_abs2(values.data(), values.size());
}

double SampledField::norm() const { return std::sqrt(norm2()); }

cplx SampledField::inner(const SampledField& other) const {
  if (values.size() != other.values.size())
    throw std::invalid_argument("inner product requires matching grids");
  return spec.weight() * kernels::active().dotc(values.data(), other.values.data(), values.size());
}

bool next_index(std::vector<std::size_t>& idx, const GridSpec& spec) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < spec.axes[i].N) return true;
    idx[i] = 0;
  }
  return false;
}

void save_field(const SampledField& f, const std::string& base) {
  nlohmann::json meta;
  std::vector<std::size_t> dims;
  std::vector<double> extents;
  for (const auto& a : f.spec.axes) {
    dims.push_back(a.N);
    extents.push_back(a.L);
  }
  meta["dims"] = dims;
  meta["extents"] = extents;
  meta["dtype"] = "c128";
  meta["order"] = "row-major";
  std::ofstream js(base + ".json");
  if (!js) throw std::runtime_error("cannot write " + base + ".json");
  js << meta.dump(2) << "\n";

  std::ofstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write " + base + ".bin");
  bin.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
}

SampledField load_field(const std::string& base) {
  std::ifstream js(base + ".json");
  if (!js) throw std::runtime_error("cannot read " + base + ".json");
  nlohmann::json meta = nlohmann::json::parse(js);
  if (meta.at("dtype") != "c128" || meta.at("order") != "row-major")
    throw std::runtime_error("unsupported field file layout in " + base + ".json");
  auto dims = meta.at("dims").get<std::vector<std::size_t>>();
  auto extents = meta.at("extents").get<std::vector<double>>();
  if (dims.size() != extents.size()) throw std::runtime_error("dims/extents mismatch in " + base);

  std::vector<AxisSpec> axes;
  for (std::size_t i = 0; i < dims.size(); ++i) axes.push_back(AxisSpec{extents[i], dims[i]});
  SampledField f{GridSpec(std::move(axes))};

  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot read " + base + ".bin");
  bin.read(reinterpret_cast<char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
  if (static_cast<std::size_t>(bin.gcount()) != f.values.size() * sizeof(cplx))
    throw std::runtime_error("short read on " + base + ".bin");
  return f;
}

}  // namespace weylcal
