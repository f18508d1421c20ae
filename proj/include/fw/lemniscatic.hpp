#pragma once

#include <span>
#include <vector>

#include "fw/complex_poly.hpp"

namespace fw {

// Exterior lemniscatic domain {w : |U(w)| > capacity} with
// U(w) = prod_j (w - foci[j])^{exponents[j]}, exponents summing to 1.
struct LemniscaticDomain {
    std::vector<cxd> foci;
    std::vector<double> exponents;
    double capacity = 0.0;

    LemniscaticDomain(std::vector<cxd> foci_, std::vector<double> exponents_, double capacity_);

    int num_foci() const { return static_cast<int>(foci.size()); }
    double max_focus_modulus() const;
};

// |U(w)|; 0 at a focus, +inf for infinite w.
double abs_u(const LemniscaticDomain& dom, cxd w);
// log|U(w)| = sum_j m_j log|w - a_j|; -inf at a focus.
double log_abs_u(const LemniscaticDomain& dom, cxd w);
void log_abs_u_many(const LemniscaticDomain& dom, std::span<const cxd> w, std::span<double> out);
// Green's function log|U(w)| - log(capacity); throws std::domain_error at a focus.
double green_value(const LemniscaticDomain& dom, cxd w);

// Order in which a focus enters the sequence first when the balance rule ties.
enum class FirstFocus { descending_real, ascending_real, domain_order };

// Focus sequence (alpha_1, ..., alpha_K): each entry indexes dom.foci, prefix
// counts stay within 1 of k * exponents[j].
class FocusSequence {
public:
    FocusSequence(std::vector<cxd> foci, std::vector<double> exponents,
                  std::vector<int> entries);

    int length() const { return static_cast<int>(entries_.size()); }
    int num_foci() const { return static_cast<int>(foci_.size()); }
    // k is 1-based: entry(1) = alpha_1.
    int entry_index(int k) const { return entries_[size_t(k - 1)]; }
    cxd value(int k) const { return foci_[size_t(entries_[size_t(k - 1)])]; }
    // N_{k,j}: occurrences of focus j among the first k entries.
    int count(int k, int j) const { return counts_[size_t(k) * foci_.size() + size_t(j)]; }
    const std::vector<cxd>& foci() const { return foci_; }
    const std::vector<double>& exponents() const { return exponents_; }
    // max over k <= length, j of |N_{k,j} - k m_j|.
    double max_balance_deviation() const;

private:
    std::vector<cxd> foci_;
    std::vector<double> exponents_;
    std::vector<int> entries_;
    std::vector<int> counts_;  // (length+1) x num_foci prefix table
};

// Two foci follow the floor rule on exponents[0]; three or more follow the
// greedy largest-deficit rule with ties to the smallest index. The ordering
// argument only matters when exponents tie.
FocusSequence build_focus_sequence(const LemniscaticDomain& dom, int length,
                                   FirstFocus order = FirstFocus::descending_real);

// Monic u_k with the first k sequence entries as roots; u_0 = 1.
ComplexPolynomial monic_prefix_polynomial(const FocusSequence& seq, int k);

// Points on the level set {|U(w)| = sigma * capacity}, sigma > 1.
std::vector<cxd> level_curve_points(const LemniscaticDomain& dom, double sigma, int samples);

// Closed level curve with an analytic parametrization (available when the foci
// are the n-th roots of a common center q and exponents are all 1/n):
//   w(theta)^n = q + (sigma*capacity)^n e^{i theta}.
struct LevelCurve {
    std::vector<cxd> points;
    std::vector<cxd> d_theta;   // dw/dtheta at each point
    double theta_span = 0.0;    // parameter interval length (2*pi per branch,
                                // 2*pi*n for a single curve winding n times)
};
bool has_ring_structure(const LemniscaticDomain& dom, cxd& center_out);
std::vector<LevelCurve> level_curves(const LemniscaticDomain& dom, double sigma,
                                     int samples_per_curve);

// Empirical bounds of |u_k(w)| / |U(w)|^k over a point set, k = 0..k_max.
struct RatioBounds {
    double lower = 0.0;
    double upper = 0.0;
};
RatioBounds ratio_bounds(const FocusSequence& seq, const LemniscaticDomain& dom,
                         std::span<const cxd> points, int k_max);

}  // namespace fw
