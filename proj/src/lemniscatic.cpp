#include "fw/lemniscatic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fw/kernels.hpp"

namespace fw {

LemniscaticDomain::LemniscaticDomain(std::vector<cxd> foci_, std::vector<double> exponents_,
                                     double capacity_)
    : foci(std::move(foci_)), exponents(std::move(exponents_)), capacity(capacity_) {
    if (foci.empty() || foci.size() != exponents.size())
        throw std::invalid_argument("LemniscaticDomain: foci/exponents size mismatch");
    double s = 0.0;
    for (double m : exponents) {
        if (!(m > 0.0)) throw std::invalid_argument("LemniscaticDomain: exponents must be > 0");
        s += m;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw std::invalid_argument("LemniscaticDomain: exponents must sum to 1");
    if (!(capacity > 0.0) || !std::isfinite(capacity))
        throw std::invalid_argument("LemniscaticDomain: capacity must be positive");
    for (size_t i = 0; i < foci.size(); ++i)
        for (size_t j = i + 1; j < foci.size(); ++j)
            if (foci[i] == foci[j])
                throw std::invalid_argument("LemniscaticDomain: foci must be distinct");
}

double LemniscaticDomain::max_focus_modulus() const {
    double m = 0.0;
    for (cxd a : foci) m = std::max(m, std::abs(a));
    return m;
}

double log_abs_u(const LemniscaticDomain& dom, cxd w) {
    double out;
    kernels::weighted_log_abs(dom.foci, dom.exponents, std::span<const cxd>(&w, 1),
                              std::span<double>(&out, 1));
    return out;
}

void log_abs_u_many(const LemniscaticDomain& dom, std::span<const cxd> w,
                    std::span<double> out) {
    kernels::weighted_log_abs(dom.foci, dom.exponents, w, out);
}

double abs_u(const LemniscaticDomain& dom, cxd w) {
    if (std::isinf(w.real()) || std::isinf(w.imag()))
        return std::numeric_limits<double>::infinity();
    return std::exp(log_abs_u(dom, w));
}

double green_value(const LemniscaticDomain& dom, cxd w) {
    if (std::isinf(w.real()) || std::isinf(w.imag()))
        return std::numeric_limits<double>::infinity();
    for (cxd a : dom.foci)
        if (w == a) throw std::domain_error("green_value: w coincides with a focus");
    return log_abs_u(dom, w) - std::log(dom.capacity);
}

FocusSequence::FocusSequence(std::vector<cxd> foci, std::vector<double> exponents,
                             std::vector<int> entries)
    : foci_(std::move(foci)), exponents_(std::move(exponents)), entries_(std::move(entries)) {
    const size_t n = foci_.size();
    counts_.assign((entries_.size() + 1) * n, 0);
    for (size_t k = 0; k < entries_.size(); ++k) {
        for (size_t j = 0; j < n; ++j) counts_[(k + 1) * n + j] = counts_[k * n + j];
        counts_[(k + 1) * n + size_t(entries_[k])] += 1;
    }
}

double FocusSequence::max_balance_deviation() const {
    double dev = 0.0;
    for (int k = 1; k <= length(); ++k)
        for (int j = 0; j < num_foci(); ++j)
            dev = std::max(dev, std::abs(double(count(k, j)) - double(k) * exponents_[size_t(j)]));
    return dev;
}

FocusSequence build_focus_sequence(const LemniscaticDomain& dom, int length, FirstFocus order) {
    if (length < 0) throw std::invalid_argument("build_focus_sequence: negative length");
    const int n = dom.num_foci();
    std::vector<int> entries(static_cast<size_t>(length));

    if (n == 1) {
        // all zeros already
    } else if (n == 2) {
        // Floor rule on the first exponent: entry k is focus i1 when
        // floor(k*m1) increments, focus i2 otherwise (i2 appears first when
        // the exponents tie at 1/2).
        int i1 = 0, i2 = 1;
        if (dom.exponents[0] == dom.exponents[1] && order != FirstFocus::domain_order) {
            auto before = [&](cxd a, cxd b) {
                if (a.real() != b.real()) return a.real() > b.real();
                return a.imag() > b.imag();
            };
            bool zero_first = before(dom.foci[0], dom.foci[1]);
            if (order == FirstFocus::ascending_real) zero_first = !zero_first;
            // The floor rule emits i2 first, so the requested focus takes i2.
            i2 = zero_first ? 0 : 1;
            i1 = 1 - i2;
        }
        const double m1 = dom.exponents[size_t(i1)];
        for (int k = 1; k <= length; ++k)
            entries[size_t(k - 1)] =
                (std::floor(k * m1) > std::floor((k - 1) * m1)) ? i1 : i2;
    } else {
        // Greedy largest deficit, ties to the smallest index.
        std::vector<int> counts(size_t(n), 0);
        for (int k = 1; k <= length; ++k) {
            int best = 0;
            double best_deficit = -std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                const double deficit = k * dom.exponents[size_t(j)] - counts[size_t(j)];
                if (deficit > best_deficit) {
                    best_deficit = deficit;
                    best = j;
                }
            }
            entries[size_t(k - 1)] = best;
            counts[size_t(best)] += 1;
        }
    }
    return FocusSequence(dom.foci, dom.exponents, std::move(entries));
}

ComplexPolynomial monic_prefix_polynomial(const FocusSequence& seq, int k) {
    if (k < 0 || k > seq.length())
        throw std::invalid_argument("monic_prefix_polynomial: k out of range");
    std::vector<cxd> roots(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) roots[size_t(i - 1)] = seq.value(i);
    return ComplexPolynomial::from_roots(roots);
}

bool has_ring_structure(const LemniscaticDomain& dom, cxd& center_out) {
    const int n = dom.num_foci();
    for (double m : dom.exponents)
        if (std::abs(m - 1.0 / n) > 1e-12) return false;
    const cxd q = std::pow(dom.foci[0], double(n));
    const double scale = std::max(1.0, std::abs(q));
    for (cxd a : dom.foci)
        if (std::abs(std::pow(a, double(n)) - q) > 1e-9 * scale) return false;
    center_out = q;
    return true;
}

std::vector<LevelCurve> level_curves(const LemniscaticDomain& dom, double sigma,
                                     int samples_per_curve) {
    if (!(sigma > 1.0)) throw std::invalid_argument("level_curves: sigma must exceed 1");
    if (samples_per_curve < 8)
        throw std::invalid_argument("level_curves: too few samples");
    cxd q;
    if (!has_ring_structure(dom, q))
        throw std::invalid_argument("level_curves: domain lacks ring structure");
    const int n = dom.num_foci();
    const double level = std::pow(sigma * dom.capacity, double(n));
    const double ratio = level / std::abs(q);
    if (n > 1 && std::abs(ratio - 1.0) < 1e-9)
        throw std::runtime_error("level_curves: level passes through a critical point");

    const double two_pi = 2.0 * std::numbers::pi;
    auto trace = [&](double theta_span, double log_offset, int m) {
        LevelCurve c;
        c.theta_span = theta_span;
        c.points.resize(size_t(m));
        c.d_theta.resize(size_t(m));
        double arg_prev = 0.0;
        bool first = true;
        for (int i = 0; i < m; ++i) {
            const double theta = theta_span * double(i) / double(m);
            const cxd e = std::polar(1.0, theta);
            const cxd r = q + level * e;
            // Continuous log along the curve keeps the n-th root on one branch.
            double a = std::arg(r);
            if (!first) {
                while (a - arg_prev > std::numbers::pi) a -= two_pi;
                while (a - arg_prev < -std::numbers::pi) a += two_pi;
            }
            first = false;
            arg_prev = a;
            const cxd w = std::exp((cxd(std::log(std::abs(r)), a) + cxd(0.0, log_offset)) /
                                   double(n));
            c.points[size_t(i)] = w;
            const cxd dr = cxd(0.0, 1.0) * level * e;
            c.d_theta[size_t(i)] = w * dr / (double(n) * r);
        }
        return c;
    };

    std::vector<LevelCurve> out;
    if (n == 1 || ratio > 1.0) {
        // Single closed curve; the n-th root needs n sweeps to close up.
        out.push_back(trace(two_pi * double(n == 1 ? 1 : n), 0.0, samples_per_curve));
    } else {
        for (int l = 0; l < n; ++l)
            out.push_back(trace(two_pi, two_pi * double(l), samples_per_curve));
    }
    return out;
}

std::vector<cxd> level_curve_points(const LemniscaticDomain& dom, double sigma, int samples) {
    if (!(sigma > 1.0))
        throw std::invalid_argument("level_curve_points: sigma must exceed 1");
    if (samples < 1) throw std::invalid_argument("level_curve_points: samples must be >= 1");
    cxd q;
    if (has_ring_structure(dom, q)) {
        const int n = dom.num_foci();
        const double level = std::pow(sigma * dom.capacity, double(n));
        const double ratio = level / std::abs(q);
        if (n == 1 || std::abs(ratio - 1.0) > 1e-9) {
            const int per = (n == 1 || ratio > 1.0)
                                ? std::max(8, samples)
                                : std::max(8, (samples + n - 1) / n);
            std::vector<cxd> pts;
            for (const LevelCurve& c : level_curves(dom, sigma, per))
                pts.insert(pts.end(), c.points.begin(), c.points.end());
            return pts;
        }
    }

    // Radial bisection from each focus on log|U| - log(sigma*capacity).
    const double target = std::log(sigma * dom.capacity);
    double spread = 0.0;
    for (cxd a : dom.foci)
        for (cxd b : dom.foci) spread = std::max(spread, std::abs(a - b));
    std::vector<cxd> pts;
    const int per = std::max(1, (samples + dom.num_foci() - 1) / dom.num_foci());
    for (cxd a : dom.foci) {
        for (int d = 0; d < per; ++d) {
            const double theta = 2.0 * std::numbers::pi * (double(d) + 0.5) / double(per);
            const cxd dir = std::polar(1.0, theta);
            double hi = sigma * dom.capacity + 2.0 * spread + 1.0;
            int guard = 0;
            while (log_abs_u(dom, a + hi * dir) < target && guard++ < 60) hi *= 2.0;
            double lo = 0.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (log_abs_u(dom, a + mid * dir) < target)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo <= 1e-16 * hi) break;
            }
            pts.push_back(a + 0.5 * (lo + hi) * dir);
        }
    }
    return pts;
}

RatioBounds ratio_bounds(const FocusSequence& seq, const LemniscaticDomain& dom,
                         std::span<const cxd> points, int k_max) {
    if (k_max < 0 || k_max > seq.length())
        throw std::invalid_argument("ratio_bounds: k_max out of range");
    for (cxd w : points)
        for (cxd a : dom.foci)
            if (std::abs(w - a) < 1e-6)
                throw std::invalid_argument("ratio_bounds: point too close to a focus");
    RatioBounds rb{std::numeric_limits<double>::infinity(), 0.0};
    for (cxd w : points) {
        const double log_u = log_abs_u(dom, w);
        double log_num = 0.0;
        for (int k = 0; k <= k_max; ++k) {
            if (k > 0) log_num += std::log(std::abs(w - seq.value(k)));
            const double r = std::exp(log_num - double(k) * log_u);
            rb.lower = std::min(rb.lower, r);
            rb.upper = std::max(rb.upper, r);
        }
    }
    return rb;
}

}  // namespace fw
