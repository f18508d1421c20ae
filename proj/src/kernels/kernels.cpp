#include "fw/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace fw::kernels {

namespace detail {

void horner_eval_scalar(std::span<const cxd> coeffs, std::span<const cxd> z,
                        std::span<cxd> out) {
    const size_t n = coeffs.size();
    if (n == 0) {
        for (size_t i = 0; i < z.size(); ++i) out[i] = cxd(0.0);
        return;
    }
    const double cr0 = coeffs[n - 1].real(), ci0 = coeffs[n - 1].imag();
    for (size_t i = 0; i < z.size(); ++i) {
        const double zr = z[i].real(), zi = z[i].imag();
        double ar = cr0, ai = ci0;
        for (size_t k = n - 1; k-- > 0;) {
            // Mirrors the vector kernels exactly: mul, mul, sub/add, add.
            const double tr = (ar * zr - ai * zi) + coeffs[k].real();
            const double ti = (ar * zi + ai * zr) + coeffs[k].imag();
            ar = tr;
            ai = ti;
        }
        out[i] = cxd(ar, ai);
    }
}

void weighted_log_abs_scalar(std::span<const cxd> foci, std::span<const double> exponents,
                             std::span<const cxd> z, std::span<double> out) {
    for (size_t i = 0; i < z.size(); ++i) {
        const double zr = z[i].real(), zi = z[i].imag();
        double acc = 0.0;
        for (size_t j = 0; j < foci.size(); ++j) {
            const double dx = zr - foci[j].real();
            const double dy = zi - foci[j].imag();
            const double sq = dx * dx + dy * dy;
            acc = acc + exponents[j] * (0.5 * std::log(sq));
        }
        out[i] = acc;
    }
}

}  // namespace detail

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

static bool avx2_available() {
#if defined(FW_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

static Isa detect_isa() {
    if (const char* env = std::getenv("FW_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0) return avx2_available() ? Isa::avx2 : Isa::scalar;
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

static Isa g_isa = detect_isa();

Isa active_isa() { return g_isa; }

Isa force_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
    g_isa = isa;
    return g_isa;
}

void horner_eval(std::span<const cxd> coeffs, std::span<const cxd> z, std::span<cxd> out) {
    if (out.size() != z.size()) throw std::invalid_argument("horner_eval: size mismatch");
#if defined(FW_HAVE_AVX2_TU)
    if (g_isa == Isa::avx2) {
        detail::horner_eval_avx2(coeffs, z, out);
        return;
    }
#endif
    detail::horner_eval_scalar(coeffs, z, out);
}

void weighted_log_abs(std::span<const cxd> foci, std::span<const double> exponents,
                      std::span<const cxd> z, std::span<double> out) {
    if (out.size() != z.size()) throw std::invalid_argument("weighted_log_abs: size mismatch");
    if (foci.size() != exponents.size())
        throw std::invalid_argument("weighted_log_abs: foci/exponents size mismatch");
#if defined(FW_HAVE_AVX2_TU)
    if (g_isa == Isa::avx2) {
        detail::weighted_log_abs_avx2(foci, exponents, z, out);
        return;
    }
#endif
    detail::weighted_log_abs_scalar(foci, exponents, z, out);
}

}  // namespace fw::kernels
