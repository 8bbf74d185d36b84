// Built with -mavx2 only; callers reach it through dispatch after a CPU check.
#include <immintrin.h>

#include <cmath>

#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap::simd {

namespace {

double residual_one(double d, const double* coords, std::size_t stride, const double* pivot,
                    std::size_t levels, std::size_t i) {
  for (std::size_t l = 0; l < levels; ++l) {
    const double diff = pivot[l] - coords[l * stride + i];
    const double t = d * d - diff * diff;
    d = std::sqrt(t > 0.0 ? t : 0.0);
  }
  return d;
}

void residual_row(const double* base, const double* coords, std::size_t stride,
                  const double* pivot, std::size_t levels, std::size_t n, double* out) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(base + i);
    for (std::size_t l = 0; l < levels; ++l) {
      const __m256d x = _mm256_loadu_pd(coords + l * stride + i);
      const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(pivot[l]), x);
      const __m256d t = _mm256_sub_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(diff, diff));
      d = _mm256_sqrt_pd(_mm256_max_pd(t, zero));
    }
    _mm256_storeu_pd(out + i, d);
  }
  for (; i < n; ++i) out[i] = residual_one(base[i], coords, stride, pivot, levels, i);
}

void project_row(const double* da, const double* db, double dab, std::size_t n, double* out) {
  const double dab2 = dab * dab;
  const double twice = 2.0 * dab;
  const __m256d vdab2 = _mm256_set1_pd(dab2);
  const __m256d vtwice = _mm256_set1_pd(twice);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(da + i);
    const __m256d b = _mm256_loadu_pd(db + i);
    const __m256d num =
        _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(a, a), vdab2), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, vtwice));
  }
  for (; i < n; ++i) out[i] = (da[i] * da[i] + dab2 - db[i] * db[i]) / twice;
}

void distance_row(const double* coords, std::size_t stride, std::size_t k, const double* point,
                  std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t l = 0; l < k; ++l) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_set1_pd(point[l]), _mm256_loadu_pd(coords + l * stride + i));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      const double diff = point[l] - coords[l * stride + i];
      acc = acc + diff * diff;
    }
    out[i] = std::sqrt(acc);
  }
}

CogSums cog_accumulate(const double* const* rows, const double* activation, std::size_t rules,
                       const double* weights, const double* weighted_y, std::size_t samples) {
  __m256d vmoment = _mm256_setzero_pd();
  __m256d varea = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= samples; i += 4) {
    __m256d mu = _mm256_setzero_pd();
    for (std::size_t r = 0; r < rules; ++r) {
      const __m256d clipped =
          _mm256_min_pd(_mm256_set1_pd(activation[r]), _mm256_loadu_pd(rows[r] + i));
      mu = _mm256_max_pd(mu, clipped);
    }
    vmoment = _mm256_add_pd(vmoment, _mm256_mul_pd(_mm256_loadu_pd(weighted_y + i), mu));
    varea = _mm256_add_pd(varea, _mm256_mul_pd(_mm256_loadu_pd(weights + i), mu));
  }
  alignas(32) double moment[4];
  alignas(32) double area[4];
  _mm256_store_pd(moment, vmoment);
  _mm256_store_pd(area, varea);
  for (; i < samples; ++i) {
    double mu = 0.0;
    for (std::size_t r = 0; r < rules; ++r) {
      const double clipped = activation[r] < rows[r][i] ? activation[r] : rows[r][i];
      mu = mu > clipped ? mu : clipped;
    }
    moment[i % 4] = moment[i % 4] + weighted_y[i] * mu;
    area[i % 4] = area[i % 4] + weights[i] * mu;
  }
  return {(moment[0] + moment[1]) + (moment[2] + moment[3]),
          (area[0] + area[1]) + (area[2] + area[3])};
}

constexpr Kernels kAvx2{Isa::kAvx2, residual_row, project_row, distance_row, cog_accumulate};

}  // namespace

const Kernels& avx2_kernels() noexcept { return kAvx2; }

}  // namespace fuzzmap::simd
