#pragma once

#include "fw/kernels.hpp"

// Internal: per-ISA entry points. Scalar versions live in kernels.cpp; the
// AVX2 translation unit is only compiled on x86-64 with -mavx2.
namespace fw::kernels::detail {

void horner_eval_scalar(std::span<const cxd> coeffs, std::span<const cxd> z, std::span<cxd> out);
void weighted_log_abs_scalar(std::span<const cxd> foci, std::span<const double> exponents,
                             std::span<const cxd> z, std::span<double> out);

#if defined(FW_HAVE_AVX2_TU)
void horner_eval_avx2(std::span<const cxd> coeffs, std::span<const cxd> z, std::span<cxd> out);
void weighted_log_abs_avx2(std::span<const cxd> foci, std::span<const double> exponents,
                           std::span<const cxd> z, std::span<double> out);
#endif

}  // namespace fw::kernels::detail
