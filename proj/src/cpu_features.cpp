#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace ewcast::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

const Table& scalar_table() noexcept { return detail::scalar_impl(); }

const Table* avx2_table() noexcept {
#if defined(EWCAST_HAVE_AVX2_KERNELS)
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::avx2_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() noexcept {
  static const Table& chosen = [] () -> const Table& {
    const char* env = std::getenv("EWCAST_ISA");
    if (env && std::string_view(env) == "scalar") return scalar_table();
    if (const Table* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace ewcast::kernels
