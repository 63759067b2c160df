#pragma once

#include "strokelab/simd/kernels.hpp"

namespace strokelab::simd::detail {

extern const KernelTable kScalarTable;
#if defined(STROKELAB_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

} // namespace strokelab::simd::detail
