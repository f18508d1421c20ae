// AVX2 variants of the batch kernels. Four points per iteration, scalar
// remainder loop. The operation order matches the scalar reference exactly
// (mul, mul, sub/add, add; no FMA), so results are bit-identical.
#include "kernels_impl.hpp"

#if defined(FW_HAVE_AVX2_TU) && defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace fw::kernels::detail {

namespace {

// Split 4 interleaved complex values into re/im vectors.
inline void deinterleave(const double* p, __m256d& re, __m256d& im) {
    const __m256d v0 = _mm256_loadu_pd(p);      // re0 im0 re1 im1
    const __m256d v1 = _mm256_loadu_pd(p + 4);  // re2 im2 re3 im3
    const __m256d t0 = _mm256_permute2f128_pd(v0, v1, 0x20);
    const __m256d t1 = _mm256_permute2f128_pd(v0, v1, 0x31);
    re = _mm256_unpacklo_pd(t0, t1);
    im = _mm256_unpackhi_pd(t0, t1);
}

inline void interleave(__m256d re, __m256d im, double* p) {
    const __m256d lo = _mm256_unpacklo_pd(re, im);
    const __m256d hi = _mm256_unpackhi_pd(re, im);
    _mm256_storeu_pd(p, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(p + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

}  // namespace

void horner_eval_avx2(std::span<const cxd> coeffs, std::span<const cxd> z, std::span<cxd> out) {
    const size_t n = coeffs.size();
    if (n == 0) {
        for (size_t i = 0; i < z.size(); ++i) out[i] = cxd(0.0);
        return;
    }
    const size_t m = z.size();
    const size_t m4 = m - m % 4;
    const double* zp = reinterpret_cast<const double*>(z.data());
    double* op = reinterpret_cast<double*>(out.data());
    const __m256d cr0 = _mm256_set1_pd(coeffs[n - 1].real());
    const __m256d ci0 = _mm256_set1_pd(coeffs[n - 1].imag());
    for (size_t i = 0; i < m4; i += 4) {
        __m256d zr, zi;
        deinterleave(zp + 2 * i, zr, zi);
        __m256d ar = cr0, ai = ci0;
        for (size_t k = n - 1; k-- > 0;) {
            const __m256d cr = _mm256_set1_pd(coeffs[k].real());
            const __m256d ci = _mm256_set1_pd(coeffs[k].imag());
            const __m256d tr = _mm256_add_pd(
                _mm256_sub_pd(_mm256_mul_pd(ar, zr), _mm256_mul_pd(ai, zi)), cr);
            const __m256d ti = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(ar, zi), _mm256_mul_pd(ai, zr)), ci);
            ar = tr;
            ai = ti;
        }
        interleave(ar, ai, op + 2 * i);
    }
    if (m4 < m) horner_eval_scalar(coeffs, z.subspan(m4), out.subspan(m4));
}

void weighted_log_abs_avx2(std::span<const cxd> foci, std::span<const double> exponents,
                           std::span<const cxd> z, std::span<double> out) {
    const size_t m = z.size();
    const size_t m4 = m - m % 4;
    const double* zp = reinterpret_cast<const double*>(z.data());
    const __m256d half = _mm256_set1_pd(0.5);
    for (size_t i = 0; i < m4; i += 4) {
        __m256d zr, zi;
        deinterleave(zp + 2 * i, zr, zi);
        __m256d acc = _mm256_setzero_pd();
        for (size_t j = 0; j < foci.size(); ++j) {
            const __m256d dx = _mm256_sub_pd(zr, _mm256_set1_pd(foci[j].real()));
            const __m256d dy = _mm256_sub_pd(zi, _mm256_set1_pd(foci[j].imag()));
            const __m256d sq =
                _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            // libm log on each lane keeps results identical to the scalar path.
            alignas(32) double s[4];
            _mm256_store_pd(s, sq);
            for (int l = 0; l < 4; ++l) s[l] = std::log(s[l]);
            const __m256d lg = _mm256_load_pd(s);
            acc = _mm256_add_pd(
                acc, _mm256_mul_pd(_mm256_set1_pd(exponents[j]), _mm256_mul_pd(half, lg)));
        }
        _mm256_storeu_pd(out.data() + i, acc);
    }
    if (m4 < m) weighted_log_abs_scalar(foci, exponents, z.subspan(m4), out.subspan(m4));
}

}  // namespace fw::kernels::detail

#endif
