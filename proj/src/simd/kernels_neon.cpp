// AArch64 Advanced SIMD variant. float64x2_t holds two lanes, so the striped
// reductions keep two registers to reproduce the four scalar partial sums.
#include <arm_neon.h>

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
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vld1q_f64(base + i);
    for (std::size_t l = 0; l < levels; ++l) {
      const float64x2_t diff = vsubq_f64(vdupq_n_f64(pivot[l]), vld1q_f64(coords + l * stride + i));
      const float64x2_t t = vsubq_f64(vmulq_f64(d, d), vmulq_f64(diff, diff));
      // vmaxq_f64 and the scalar ternary agree for every non-NaN input.
      d = vsqrtq_f64(vmaxq_f64(t, zero));
    }
    vst1q_f64(out + i, d);
  }
  for (; i < n; ++i) out[i] = residual_one(base[i], coords, stride, pivot, levels, i);
}

void project_row(const double* da, const double* db, double dab, std::size_t n, double* out) {
  const double dab2 = dab * dab;
  const double twice = 2.0 * dab;
  const float64x2_t vdab2 = vdupq_n_f64(dab2);
  const float64x2_t vtwice = vdupq_n_f64(twice);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vld1q_f64(da + i);
    const float64x2_t b = vld1q_f64(db + i);
    const float64x2_t num = vsubq_f64(vaddq_f64(vmulq_f64(a, a), vdab2), vmulq_f64(b, b));
    vst1q_f64(out + i, vdivq_f64(num, vtwice));
  }
  for (; i < n; ++i) out[i] = (da[i] * da[i] + dab2 - db[i] * db[i]) / twice;
}

void distance_row(const double* coords, std::size_t stride, std::size_t k, const double* point,
                  std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t l = 0; l < k; ++l) {
      const float64x2_t diff = vsubq_f64(vdupq_n_f64(point[l]), vld1q_f64(coords + l * stride + i));
      acc = vaddq_f64(acc, vmulq_f64(diff, diff));
    }
    vst1q_f64(out + i, vsqrtq_f64(acc));
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

float64x2_t accumulated(const double* const* rows, const double* activation, std::size_t rules,
                        std::size_t i) {
  float64x2_t mu = vdupq_n_f64(0.0);
  for (std::size_t r = 0; r < rules; ++r) {
    const float64x2_t clipped = vminq_f64(vdupq_n_f64(activation[r]), vld1q_f64(rows[r] + i));
    mu = vmaxq_f64(mu, clipped);
  }
  return mu;
}

CogSums cog_accumulate(const double* const* rows, const double* activation, std::size_t rules,
                       const double* weights, const double* weighted_y, std::size_t samples) {
  float64x2_t moment_lo = vdupq_n_f64(0.0);  // lanes 0, 1
  float64x2_t moment_hi = vdupq_n_f64(0.0);  // lanes 2, 3
  float64x2_t area_lo = vdupq_n_f64(0.0);
  float64x2_t area_hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= samples; i += 4) {
    const float64x2_t mu_lo = accumulated(rows, activation, rules, i);
    const float64x2_t mu_hi = accumulated(rows, activation, rules, i + 2);
    moment_lo = vaddq_f64(moment_lo, vmulq_f64(vld1q_f64(weighted_y + i), mu_lo));
    moment_hi = vaddq_f64(moment_hi, vmulq_f64(vld1q_f64(weighted_y + i + 2), mu_hi));
    area_lo = vaddq_f64(area_lo, vmulq_f64(vld1q_f64(weights + i), mu_lo));
    area_hi = vaddq_f64(area_hi, vmulq_f64(vld1q_f64(weights + i + 2), mu_hi));
  }
  double moment[4];
  double area[4];
  vst1q_f64(moment, moment_lo);
  vst1q_f64(moment + 2, moment_hi);
  vst1q_f64(area, area_lo);
  vst1q_f64(area + 2, area_hi);
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

constexpr Kernels kNeon{Isa::kNeon, residual_row, project_row, distance_row, cog_accumulate};

}  // namespace

const Kernels& neon_kernels() noexcept { return kNeon; }

}  // namespace fuzzmap::simd
