#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Inner loops of the exhaustive search and the finite-field elimination.
// Every variant must produce bit-identical output to the scalar reference;
// the double kernels use one fused multiply-add per element for that reason.
namespace ewcast::kernels {

enum class Isa { scalar, avx2 };

struct Table {
  Isa isa;
  // y[i] = a * x[i]
  void (*scale)(double a, const double* x, double* y, std::size_t n);
  // y[i] = fma(a, x[i], y[i])
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y[i] = a * lut[code[i]]  /  y[i] = fma(a, lut[code[i]], y[i])
  void (*gather_scale_u8)(double a, const double* lut, const std::uint8_t* code, double* y, std::size_t n);
  void (*gather_axpy_u8)(double a, const double* lut, const std::uint8_t* code, double* y, std::size_t n);
  void (*gather_scale_u16)(double a, const double* lut, const std::uint16_t* code, double* y, std::size_t n);
  void (*gather_axpy_u16)(double a, const double* lut, const std::uint16_t* code, double* y, std::size_t n);
  // y[i] = fma(w[t-1], in[t-1][i], ... fma(w[1], in[1][i], w[0] * in[0][i]))
  // Same per-element sequence as scale followed by axpy calls, in one pass;
  // meant for blocks too short to amortize a call per term.
  void (*combine)(const double* w, const double* const* in, std::size_t terms, double* y, std::size_t n);
  // combine for one element laid out contiguously: in[x] = h[x]
  double (*fold)(const double* w, const double* h, std::size_t terms);
  // y[i] = (y[i] + c * x[i]) mod (2^31 - 1); inputs already reduced
  void (*mod_axpy_m31)(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y, std::size_t n);
};

const Table& scalar_table() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks it.
const Table* avx2_table() noexcept;

// Table chosen at startup from CPU features; EWCAST_ISA=scalar forces the reference.
const Table& active() noexcept;
std::string_view isa_name(Isa isa) noexcept;

}  // namespace ewcast::kernels
