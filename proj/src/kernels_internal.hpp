#pragma once

#include "ewcast/kernels.hpp"

namespace ewcast::kernels::detail {

const Table& scalar_impl() noexcept;
#if defined(EWCAST_HAVE_AVX2_KERNELS)
const Table& avx2_impl() noexcept;
#endif

}  // namespace ewcast::kernels::detail
