#include <cmath>

#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap::simd {

namespace {

void residual_row(const double* base, const double* coords, std::size_t stride,
                  const double* pivot, std::size_t levels, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double d = base[i];
    for (std::size_t l = 0; l < levels; ++l) {
      const double diff = pivot[l] - coords[l * stride + i];
      const double t = d * d - diff * diff;
      d = std::sqrt(t > 0.0 ? t : 0.0);
    }
    out[i] = d;
  }
}

void project_row(const double* da, const double* db, double dab, std::size_t n, double* out) {
  const double dab2 = dab * dab;
  const double twice = 2.0 * dab;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (da[i] * da[i] + dab2 - db[i] * db[i]) / twice;
  }
}

void distance_row(const double* coords, std::size_t stride, std::size_t k, const double* point,
                  std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
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
  double moment[4] = {0.0, 0.0, 0.0, 0.0};
  double area[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < samples; ++i) {
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

constexpr Kernels kScalar{Isa::kScalar, residual_row, project_row, distance_row, cog_accumulate};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace fuzzmap::simd
