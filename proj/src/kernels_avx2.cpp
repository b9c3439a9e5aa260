#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace ewcast::kernels::detail {
namespace {

void scale(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = a * x[i];
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    __m256d y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

inline __m128i load_idx(const std::uint8_t* c) {
  std::int32_t raw;
  __builtin_memcpy(&raw, c, 4);
  return _mm_cvtepu8_epi32(_mm_cvtsi32_si128(raw));
}

inline __m128i load_idx(const std::uint16_t* c) {
  return _mm_cvtepu16_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(c)));
}

template <class Code>
void gather_scale(double a, const double* lut, const Code* code, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_i32gather_pd(lut, load_idx(code + i), 8);
    _mm256_storeu_pd(y + i, _mm256_mul_pd(va, v));
  }
  for (; i < n; ++i) y[i] = a * lut[code[i]];
}

template <class Code>
void gather_axpy(double a, const double* lut, const Code* code, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_i32gather_pd(lut, load_idx(code + i), 8);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, v, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(a, lut[code[i]], y[i]);
}

void combine(const double* w, const double* const* in, std::size_t terms, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_set1_pd(w[0]), _mm256_loadu_pd(in[0] + i));
    for (std::size_t t = 1; t < terms; ++t) v = _mm256_fmadd_pd(_mm256_set1_pd(w[t]), _mm256_loadu_pd(in[t] + i), v);
    _mm256_storeu_pd(y + i, v);
  }
  for (; i < n; ++i) {
    double v = w[0] * in[0][i];
    for (std::size_t t = 1; t < terms; ++t) v = std::fma(w[t], in[t][i], v);
    y[i] = v;
  }
}

double fold(const double* w, const double* h, std::size_t terms) {
  double v = w[0] * h[0];
  for (std::size_t t = 1; t < terms; ++t) v = std::fma(w[t], h[t], v);
  return v;
}

// Fold a value below 2^62 to below 2^32 using 2^31 == 1 (mod p).
inline __m256i fold(__m256i t, __m256i p) {
  return _mm256_add_epi64(_mm256_and_si256(t, p), _mm256_srli_epi64(t, 31));
}

void mod_axpy_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y, std::size_t n) {
  constexpr std::uint64_t kP = (1ull << 31) - 1;
  const __m256i p64 = _mm256_set1_epi64x(static_cast<long long>(kP));
  const __m256i p32 = _mm256_set1_epi32(static_cast<int>(kP));
  const __m256i vc = _mm256_set1_epi64x(c);
  const __m256i lo_mask = _mm256_set1_epi64x(0xffffffffll);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    // even lanes in the low halves, odd lanes shifted down
    __m256i xe = vx, xo = _mm256_srli_epi64(vx, 32);
    __m256i ye = _mm256_and_si256(vy, lo_mask), yo = _mm256_srli_epi64(vy, 32);
    __m256i te = fold(_mm256_add_epi64(fold(_mm256_mul_epu32(vc, xe), p64), ye), p64);
    __m256i to = fold(_mm256_add_epi64(fold(_mm256_mul_epu32(vc, xo), p64), yo), p64);
    __m256i r = _mm256_or_si256(_mm256_and_si256(te, lo_mask), _mm256_slli_epi64(to, 32));
    // r <= p + 1 here; min(r, r - p) as unsigned picks the reduced value
    r = _mm256_min_epu32(r, _mm256_sub_epi32(r, p32));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), r);
  }
  for (; i < n; ++i) {
    std::uint64_t t = std::uint64_t{c} * x[i];
    t = (t & kP) + (t >> 31);
    t += y[i];
    t = (t & kP) + (t >> 31);
    if (t >= kP) t -= kP;
    y[i] = static_cast<std::uint32_t>(t);
  }
}

}  // namespace

const Table& avx2_impl() noexcept {
  static const Table t{Isa::avx2,
                       scale,
                       axpy,
                       gather_scale<std::uint8_t>,
                       gather_axpy<std::uint8_t>,
                       gather_scale<std::uint16_t>,
                       gather_axpy<std::uint16_t>,
                       combine,
                       fold,
                       mod_axpy_m31};
  return t;
}

}  // namespace ewcast::kernels::detail
