#pragma once

#include "weylcal/grid.hpp"

#include <cstdint>
#include <string_view>

namespace weylcal {

// Random band-limited fields, built in the centered spectral domain as
// complex gaussians under a gaussian envelope with a hard cutoff, then
// transformed to the sampling grid and normalized. The cutoff keeps every
// covariance suite inside the exactly-representable band.
struct TestFieldOptions {
  std::uint64_t seed = 1;
  double band = 0.5;   // hard cutoff at |q| < band * N/2 per axis, in bin units
  double shape = 0.4;  // gaussian envelope width as a fraction of the cutoff
  int zero_axis = -1;  // if >= 0, zero the q = 0 spectral hyperplane of this axis
  bool diamond = false;  // rank 2m: restrict pairs (j, m+j) to |q_j| + |q_{m+j}| < N/2
  double window = 0.0;   // if > 0, multiply by exp(-pi r^2 / (window L)^2) in space
};

SampledField random_band_field(const GridSpec& spec, const TestFieldOptions& opt);

// Deterministic per-check substream: FNV-1a of the name folded into the seed.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view name);

}  // namespace weylcal
