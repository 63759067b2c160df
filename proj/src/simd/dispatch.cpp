#include "kernels_internal.hpp"

#include "strokelab/error.hpp"

#include <cstdlib>
#include <string>

namespace strokelab::simd {

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable& scalar_kernels() {
    return detail::kScalarTable;
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(STROKELAB_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& kernels(Isa isa) {
    if (!isa_available(isa))
        throw InvalidArgument("SIMD variant " + std::string(to_string(isa)) + " unavailable");
#if defined(STROKELAB_HAVE_AVX2)
    if (isa == Isa::avx2)
        return detail::kAvx2Table;
#endif
    return detail::kScalarTable;
}

namespace {

Isa select_isa() {
    if (const char* forced = std::getenv("STROKELAB_SIMD")) {
        const std::string_view want(forced);
        if (want == "scalar")
            return Isa::scalar;
        if (want == "avx2" && isa_available(Isa::avx2))
            return Isa::avx2;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

} // namespace

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

const KernelTable& active() {
    static const KernelTable& table = kernels(active_isa());
    return table;
}

} // namespace strokelab::simd
