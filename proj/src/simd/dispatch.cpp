#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap::simd {

namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(FUZZMAP_HAS_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(FUZZMAP_HAS_NEON)
      return true;  // Advanced SIMD is mandatory on AArch64.
#else
      return false;
#endif
  }
  return false;
}

const Kernels* table(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return &scalar_kernels();
    case Isa::kAvx2:
#if defined(FUZZMAP_HAS_AVX2)
      return &avx2_kernels();
#else
      return nullptr;
#endif
    case Isa::kNeon:
#if defined(FUZZMAP_HAS_NEON)
      return &neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const Kernels& detect() {
  if (const char* env = std::getenv("FUZZMAP_SIMD")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa)) {
        if (const Kernels* k = find_kernels(isa)) return *k;
        throw std::invalid_argument("FUZZMAP_SIMD=" + std::string(want) +
                                    " is not available on this machine");
      }
    }
    if (want != "auto" && !want.empty()) {
      throw std::invalid_argument("unknown FUZZMAP_SIMD value '" + std::string(want) + "'");
    }
  }
  const auto isas = available_isas();
  return *find_kernels(isas.back());
}

std::atomic<const Kernels*> forced{nullptr};

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (cpu_supports(isa) && table(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

const Kernels* find_kernels(Isa isa) noexcept { return cpu_supports(isa) ? table(isa) : nullptr; }

const Kernels& active_kernels() {
  if (const Kernels* k = forced.load(std::memory_order_acquire)) return *k;
  static const Kernels& detected = detect();
  return detected;
}

void force_isa(Isa isa) {
  const Kernels* k = find_kernels(isa);
  if (k == nullptr) {
    throw std::invalid_argument(std::string("SIMD variant ") + isa_name(isa) + " is not available");
  }
  forced.store(k, std::memory_order_release);
}

void reset_isa() { forced.store(nullptr, std::memory_order_release); }

}  // namespace fuzzmap::simd
