#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "fw/kernels.hpp"

namespace k = fw::kernels;
using fw::kernels::cxd;

namespace {

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}
bool same_bits(cxd a, cxd b) {
    return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag());
}

struct IsaGuard {
    k::Isa saved;
    IsaGuard() : saved(k::active_isa()) {}
    ~IsaGuard() { k::force_isa(saved); }
};

}  // namespace

TEST_CASE("isa dispatch reports a valid name") {
    const k::Isa isa = k::active_isa();
    CHECK((isa == k::Isa::scalar || isa == k::Isa::avx2));
    CHECK(k::isa_name(isa) != nullptr);
    IsaGuard guard;
    CHECK(k::force_isa(k::Isa::scalar) == k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
}

TEST_CASE("horner_eval validates spans and handles the zero polynomial") {
    std::vector<cxd> pts{cxd(1.0, 2.0)};
    std::vector<cxd> out(2);
    CHECK_THROWS_AS(k::horner_eval({}, pts, out), std::invalid_argument);
    out.resize(1);
    k::horner_eval({}, pts, out);
    CHECK(out[0] == cxd(0.0));
}

TEST_CASE("vector horner matches the scalar reference bit for bit") {
    IsaGuard guard;
    const bool have_avx2 = k::force_isa(k::Isa::avx2) == k::Isa::avx2;
    if (!have_avx2) return;  // nothing to compare on this machine

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int deg : {0, 1, 2, 3, 5, 8, 13, 21, 34, 40}) {
        std::vector<cxd> coeffs;
        for (int i = 0; i <= deg; ++i) coeffs.emplace_back(u(rng), u(rng));
        for (int n = 1; n <= 17; ++n) {
            std::vector<cxd> pts;
            for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
            std::vector<cxd> out_s(pts.size()), out_v(pts.size());
            k::force_isa(k::Isa::scalar);
            k::horner_eval(coeffs, pts, out_s);
            k::force_isa(k::Isa::avx2);
            k::horner_eval(coeffs, pts, out_v);
            for (size_t i = 0; i < pts.size(); ++i) CHECK(same_bits(out_s[i], out_v[i]));
        }
    }
}

TEST_CASE("vector weighted_log_abs matches the scalar reference bit for bit") {
    IsaGuard guard;
    const bool have_avx2 = k::force_isa(k::Isa::avx2) == k::Isa::avx2;
    if (!have_avx2) return;

    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> m(0.05, 1.0);
    for (int nf = 1; nf <= 5; ++nf) {
        std::vector<cxd> foci;
        std::vector<double> expo;
        for (int j = 0; j < nf; ++j) {
            foci.emplace_back(u(rng), u(rng));
            expo.push_back(m(rng));
        }
        for (int n = 1; n <= 13; ++n) {
            std::vector<cxd> pts;
            for (int i = 0; i < n; ++i) pts.emplace_back(3.0 * u(rng), 3.0 * u(rng));
            std::vector<double> out_s(pts.size()), out_v(pts.size());
            k::force_isa(k::Isa::scalar);
            k::weighted_log_abs(foci, expo, pts, out_s);
            k::force_isa(k::Isa::avx2);
            k::weighted_log_abs(foci, expo, pts, out_v);
            for (size_t i = 0; i < pts.size(); ++i) CHECK(same_bits(out_s[i], out_v[i]));
        }
    }
}

TEST_CASE("weighted_log_abs at a focus yields -inf") {
    std::vector<cxd> foci{cxd(1.0, 1.0)};
    std::vector<double> expo{1.0};
    std::vector<cxd> pts{cxd(1.0, 1.0), cxd(2.0, 1.0)};
    std::vector<double> out(2);
    k::weighted_log_abs(foci, expo, pts, out);
    CHECK(out[0] == -std::numeric_limits<double>::infinity());
    CHECK(out[1] == doctest::Approx(0.0));
}
