#include "chernlink/kernels.hpp"

namespace chernlink::kernels {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::scalar: break;
    }
    return "scalar";
}

bool avx2_available() noexcept {
#if defined(CHERNLINK_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Isa detect_isa() noexcept { return avx2_available() ? Isa::avx2 : Isa::scalar; }

PairFluxResult pair_flux(Soa3View p, Soa3View u, Soa3View q, Soa3View v, Isa isa) {
#if defined(CHERNLINK_WITH_AVX2)
    if (isa == Isa::avx2 && avx2_available()) return pair_flux_avx2(p, u, q, v);
#else
    (void)isa;
#endif
    return pair_flux_scalar(p, u, q, v);
}

} // namespace chernlink::kernels
