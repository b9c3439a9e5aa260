#include <cmath>

#include "kernels_internal.hpp"

namespace ewcast::kernels::detail {
namespace {

constexpr std::uint64_t kM31 = (1ull << 31) - 1;

void scale(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i];
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

template <class Code>
void gather_scale(double a, const double* lut, const Code* code, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * lut[code[i]];
}

template <class Code>
void gather_axpy(double a, const double* lut, const Code* code, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, lut[code[i]], y[i]);
}

void combine(const double* w, const double* const* in, std::size_t terms, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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

void mod_axpy_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t t = std::uint64_t{c} * x[i];
    t = (t & kM31) + (t >> 31);
    t += y[i];
    t = (t & kM31) + (t >> 31);
    if (t >= kM31) t -= kM31;
    y[i] = static_cast<std::uint32_t>(t);
  }
}

}  // namespace

const Table& scalar_impl() noexcept {
  static const Table t{Isa::scalar,
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
