#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fw/lemniscatic.hpp"

using fw::cxd;
using fw::FirstFocus;
using fw::FocusSequence;
using fw::LemniscaticDomain;

namespace {
const double kMu = std::sqrt(15.0) / 8.0;

LemniscaticDomain sym_domain() {
    return LemniscaticDomain({cxd(0.625), cxd(-0.625)}, {0.5, 0.5}, kMu);
}
}  // namespace

TEST_CASE("domain constructor validates its invariants") {
    CHECK_THROWS_AS(LemniscaticDomain({cxd(1.0)}, {0.5, 0.5}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LemniscaticDomain({cxd(1.0), cxd(2.0)}, {0.5, 0.6}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(LemniscaticDomain({cxd(1.0), cxd(2.0)}, {1.2, -0.2}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(LemniscaticDomain({cxd(1.0), cxd(1.0)}, {0.5, 0.5}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(LemniscaticDomain({cxd(1.0)}, {1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LemniscaticDomain({cxd(1.0)}, {1.0}, -2.0), std::invalid_argument);
    const LemniscaticDomain ok({cxd(1.0), cxd(-1.0)}, {0.25, 0.75}, 0.5);
    CHECK(ok.num_foci() == 2);
    CHECK(ok.max_focus_modulus() == 1.0);
}

TEST_CASE("abs_u and the Green function on the two-interval domain") {
    const LemniscaticDomain dom = sym_domain();
    // |U(w)|^2 = |w^2 - s^2| for equal half weights.
    const double s2 = 0.625 * 0.625;
    CHECK(fw::abs_u(dom, cxd(2.0)) == doctest::Approx(std::sqrt(4.0 - s2)).epsilon(1e-14));

    // A point with |U| = sigma * mu has Green value log(sigma).
    const double sigma = 2.0;
    const cxd w(std::sqrt(s2 + sigma * sigma * kMu * kMu), 0.0);
    CHECK(fw::green_value(dom, w) == doctest::Approx(std::log(sigma)).epsilon(1e-12));

    CHECK_THROWS_AS(fw::green_value(dom, cxd(0.625)), std::domain_error);
    CHECK(fw::log_abs_u(dom, cxd(0.625)) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("two-focus sequence follows the floor rule") {
    SUBCASE("equal weights, descending tie-break starts at the right-hand focus") {
        const FocusSequence seq = fw::build_focus_sequence(sym_domain(), 6);
        CHECK(seq.value(1) == cxd(0.625));
        CHECK(seq.value(2) == cxd(-0.625));
        CHECK(seq.value(3) == cxd(0.625));
        CHECK(seq.value(4) == cxd(-0.625));
        CHECK(seq.max_balance_deviation() <= 0.5 + 1e-15);
    }
    SUBCASE("equal weights, reversed domain order gives the same values") {
        const LemniscaticDomain rev({cxd(-0.625), cxd(0.625)}, {0.5, 0.5}, kMu);
        const FocusSequence seq = fw::build_focus_sequence(rev, 4);
        CHECK(seq.value(1) == cxd(0.625));
        CHECK(seq.value(2) == cxd(-0.625));
    }
    SUBCASE("ascending tie-break starts at the left-hand focus") {
        const FocusSequence seq =
            fw::build_focus_sequence(sym_domain(), 4, FirstFocus::ascending_real);
        CHECK(seq.value(1) == cxd(-0.625));
        CHECK(seq.value(2) == cxd(0.625));
    }
    SUBCASE("weights 1/3 and 2/3 interleave with the floor pattern") {
        const LemniscaticDomain dom({cxd(1.0), cxd(-1.0)}, {1.0 / 3.0, 2.0 / 3.0}, 0.5);
        const FocusSequence seq = fw::build_focus_sequence(dom, 9);
        // Focus 0 enters whenever floor(k/3) increments: k = 3, 6, 9.
        for (int k = 1; k <= 9; ++k) CHECK(seq.entry_index(k) == (k % 3 == 0 ? 0 : 1));
        CHECK(seq.count(9, 0) == 3);
        CHECK(seq.count(9, 1) == 6);
        CHECK(seq.max_balance_deviation() <= 1.0);
    }
}

TEST_CASE("greedy sequence for three and more foci") {
    SUBCASE("equal weights cycle through the foci in domain order") {
        std::vector<cxd> foci{cxd(1.0), cxd(-0.5, 0.8), cxd(-0.5, -0.8)};
        const LemniscaticDomain dom(foci, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.6);
        const FocusSequence seq = fw::build_focus_sequence(dom, 9);
        for (int k = 1; k <= 9; ++k) CHECK(seq.entry_index(k) == (k - 1) % 3);
    }
    SUBCASE("unequal weights stay balanced within 1 over long prefixes") {
        const LemniscaticDomain dom({cxd(0.0), cxd(1.0), cxd(0.0, 1.0)}, {0.2, 0.3, 0.5},
                                    0.4);
        const FocusSequence seq = fw::build_focus_sequence(dom, 2000);
        CHECK(seq.max_balance_deviation() <= 1.0);
    }
}

TEST_CASE("monic prefix polynomial multiplies out the first entries") {
    const FocusSequence seq = fw::build_focus_sequence(sym_domain(), 3);
    const fw::ComplexPolynomial u2 = fw::monic_prefix_polynomial(seq, 2);
    CHECK(u2.degree() == 2);
    CHECK(std::abs(u2.coeff(0) - cxd(-0.625 * 0.625)) < 1e-15);
    CHECK(std::abs(u2.coeff(1)) < 1e-15);
    CHECK(u2.coeff(2) == cxd(1.0));
    CHECK(fw::monic_prefix_polynomial(seq, 0).degree() == 0);
    CHECK_THROWS_AS(fw::monic_prefix_polynomial(seq, 4), std::invalid_argument);
}

TEST_CASE("ring structure detection") {
    cxd q;
    CHECK(fw::has_ring_structure(sym_domain(), q));
    CHECK(std::abs(q - cxd(0.625 * 0.625)) < 1e-15);

    const LemniscaticDomain skew({cxd(1.0), cxd(-0.5)}, {0.5, 0.5}, 0.5);
    CHECK_FALSE(fw::has_ring_structure(skew, q));

    const LemniscaticDomain uneven({cxd(1.0), cxd(-1.0)}, {0.25, 0.75}, 0.5);
    CHECK_FALSE(fw::has_ring_structure(uneven, q));
}

TEST_CASE("level curves on a ring domain") {
    const LemniscaticDomain dom = sym_domain();

    SUBCASE("a high level gives a single curve winding around both foci") {
        const auto curves = fw::level_curves(dom, 2.0, 512);
        REQUIRE(curves.size() == 1);
        CHECK(curves[0].theta_span == doctest::Approx(4.0 * std::numbers::pi));
        for (cxd w : curves[0].points)
            CHECK(fw::abs_u(dom, w) == doctest::Approx(2.0 * kMu).epsilon(1e-12));
    }

    SUBCASE("a low level splits into one loop per focus") {
        const auto curves = fw::level_curves(dom, 1.1, 256);
        REQUIRE(curves.size() == 2);
        for (const auto& c : curves) {
            CHECK(c.theta_span == doctest::Approx(2.0 * std::numbers::pi));
            for (cxd w : c.points)
                CHECK(fw::abs_u(dom, w) == doctest::Approx(1.1 * kMu).epsilon(1e-12));
        }
        // One loop per side of the imaginary axis.
        const double r0 = curves[0].points[0].real();
        const double r1 = curves[1].points[0].real();
        CHECK(r0 * r1 < 0.0);
    }

    SUBCASE("tangent derivative matches finite differences") {
        const auto curves = fw::level_curves(dom, 2.0, 4096);
        const auto& c = curves[0];
        const size_t n = c.points.size();
        const double h = c.theta_span / double(n);
        for (size_t i : {size_t(10), size_t(1000), size_t(3000)}) {
            const cxd fd = (c.points[(i + 1) % n] - c.points[(i + n - 1) % n]) / (2.0 * h);
            CHECK(std::abs(fd - c.d_theta[i]) < 1e-4 * (1.0 + std::abs(c.d_theta[i])));
        }
    }

    SUBCASE("the critical level is rejected") {
        // sigma* mu squared = |q|: the lemniscate with the figure-eight point.
        const double sigma_star = 0.625 / kMu;
        CHECK_THROWS_AS(fw::level_curves(dom, sigma_star, 128), std::runtime_error);
    }

    SUBCASE("level must exceed one and sampling must be sane") {
        CHECK_THROWS_AS(fw::level_curves(dom, 1.0, 128), std::invalid_argument);
        CHECK_THROWS_AS(fw::level_curves(dom, 2.0, 4), std::invalid_argument);
    }
}

TEST_CASE("level curve points fall back to bisection off the ring case") {
    const LemniscaticDomain dom({cxd(0.0), cxd(1.0), cxd(0.0, 1.0)}, {0.2, 0.3, 0.5}, 0.4);
    const auto pts = fw::level_curve_points(dom, 1.7, 120);
    CHECK(pts.size() >= 120);
    for (cxd w : pts) CHECK(fw::abs_u(dom, w) == doctest::Approx(1.7 * 0.4).epsilon(1e-9));
}

TEST_CASE("ratio bounds bracket one on a level curve") {
    const LemniscaticDomain dom = sym_domain();
    const FocusSequence seq = fw::build_focus_sequence(dom, 6);
    const auto pts = fw::level_curve_points(dom, 2.0, 256);
    const auto rb = fw::ratio_bounds(seq, dom, pts, 6);
    CHECK(rb.lower > 0.0);
    CHECK(rb.lower <= 1.0);
    CHECK(rb.upper >= 1.0);
    CHECK(std::isfinite(rb.upper));

    // u_2 = (w - s)(w + s) equals U^2 here, so with k_max = 2 the bounds are
    // governed by the k = 1 ratios alone; they must straddle 1 symmetrically
    // in log terms within the sampling resolution.
    const auto rb2 = fw::ratio_bounds(seq, dom, pts, 2);
    CHECK(rb2.lower * rb2.upper == doctest::Approx(1.0).epsilon(1e-2));
}
