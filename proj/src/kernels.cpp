#include "weylcal/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace weylcal::kernels {

bool avx2_supported() {
#if WEYLCAL_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const Ops* resolve(const std::string& name) {
  if (name == "scalar") return &scalar_ops();
#if WEYLCAL_HAVE_AVX2
  if (name == "avx2") {
    if (!avx2_supported()) throw std::runtime_error("avx2 not supported on this cpu");
    return &avx2_ops();
  }
#else
  if (name == "avx2") throw std::runtime_error("avx2 kernels not compiled in");
#endif
  if (name == "auto" || name.empty()) {
#if WEYLCAL_HAVE_AVX2
    if (avx2_supported()) return &avx2_ops();
#endif
    return &scalar_ops();
  }
  throw std::runtime_error("unknown kernel variant: " + name);
}

const Ops* initial() {
  const char* env = std::getenv("WEYLCAL_KERNEL");
  return resolve(env ? env : "auto");
}

const Ops*& current() {
  static const Ops* ops = initial();
  return ops;
}

}  // namespace

const Ops& active() { return *current(); }

void force(const std::string& name) { current() = resolve(name); }

}  // namespace weylcal::kernels
