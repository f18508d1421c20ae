#pragma once

#include <complex>
#include <span>
#include <string>

// Batch kernels for the data-parallel inner loops (polynomial evaluation over
// point grids, weighted log-distance sums). A scalar reference implementation
// is always available; vector variants are selected at runtime and must return
// bit-identical results, which the tests enforce.
namespace fw::kernels {

using cxd = std::complex<double>;

enum class Isa { scalar, avx2 };

// ISA picked at startup: best supported, unless overridden by the FW_ISA
// environment variable ("scalar" or "avx2").
Isa active_isa();
const char* isa_name(Isa);
// Test hook; ignores unsupported requests and returns the ISA actually set.
Isa force_isa(Isa);

// out[i] = p(z[i]) with p given by ascending coefficients (empty = zero poly).
void horner_eval(std::span<const cxd> coeffs, std::span<const cxd> z, std::span<cxd> out);

// out[i] = sum_j exponents[j] * log|z[i] - foci[j]|. A point equal to a focus
// yields -inf.
void weighted_log_abs(std::span<const cxd> foci, std::span<const double> exponents,
                      std::span<const cxd> z, std::span<double> out);

}  // namespace fw::kernels
