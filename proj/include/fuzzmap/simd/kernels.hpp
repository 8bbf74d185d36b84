#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace fuzzmap::simd {

enum class Isa { kScalar, kAvx2, kNeon };

const char* isa_name(Isa isa) noexcept;

struct CogSums {
  double moment = 0.0;  // sum of w_i * y_i * mu_i
  double area = 0.0;    // sum of w_i * mu_i
};

// Every variant produces results bit-identical to the scalar table: same
// per-element operation order, no fused multiply-add, and reductions use
// four striped partial sums combined as (s0 + s1) + (s2 + s3).
//
// Coordinates are column-major: axis l of node i is coords[l * stride + i].
struct Kernels {
  Isa isa;

  // out[i] = base[i] folded through `levels` residual steps against `pivot`:
  //   d = sqrt(max(0, d*d - (pivot[l] - x_l[i])^2)).
  void (*residual_row)(const double* base, const double* coords, std::size_t stride,
                       const double* pivot, std::size_t levels, std::size_t n, double* out);

  // out[i] = (da[i]^2 + dab^2 - db[i]^2) / (2 dab).
  void (*project_row)(const double* da, const double* db, double dab, std::size_t n, double* out);

  // out[i] = sqrt(sum_l (point[l] - x_l[i])^2), summed over l ascending.
  void (*distance_row)(const double* coords, std::size_t stride, std::size_t k,
                       const double* point, std::size_t n, double* out);

  // Accumulated output membership mu_i = max_r min(activation[r], rows[r][i])
  // integrated against the sample weights.
  CogSums (*cog_accumulate)(const double* const* rows, const double* activation,
                            std::size_t rules, const double* weights, const double* weighted_y,
                            std::size_t samples);
};

const Kernels& scalar_kernels() noexcept;
#if defined(FUZZMAP_HAS_AVX2)
const Kernels& avx2_kernels() noexcept;
#endif
#if defined(FUZZMAP_HAS_NEON)
const Kernels& neon_kernels() noexcept;
#endif

/// Variants compiled in and supported by the running CPU, scalar first.
std::vector<Isa> available_isas();

/// Table for `isa`, or nullptr when it is not available here.
const Kernels* find_kernels(Isa isa) noexcept;

/// Best available variant, unless FUZZMAP_SIMD=scalar|avx2|neon says otherwise
/// or force_isa() was called.
const Kernels& active_kernels();

/// Overrides dispatch for the whole process (tests, benchmarks). Throws
/// std::invalid_argument when the variant is not available.
void force_isa(Isa isa);
void reset_isa();

/// Pair distance with the same operation order as distance_row.
inline double pair_distance(const double* coords, std::size_t stride, std::size_t k,
                            std::size_t u, std::size_t v) {
  double acc = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    const double diff = coords[l * stride + u] - coords[l * stride + v];
    acc = acc + diff * diff;
  }
  return std::sqrt(acc);
}

}  // namespace fuzzmap::simd
