#pragma once

#include <functional>
#include <vector>

#include "fw/conformal_maps.hpp"
#include "fw/lemniscatic.hpp"

namespace fw {

// Monic polynomial family b_0..b_K attached to a focus sequence. b_k has
// degree exactly k and its zeros cluster toward the foci in proportion to
// the sequence counts.
struct FaberWalshFamily {
    std::vector<ComplexPolynomial> polys;
    FocusSequence seq;

    int max_degree() const { return int(polys.size()) - 1; }
    const ComplexPolynomial& operator[](int k) const { return polys.at(size_t(k)); }
};

// Builds b_0..b_K from the psi tail coefficients by the beta-table
// recurrence. Requires psi_laurent normalized (linear 1, constant 0) with
// tail length >= K+2, and a focus sequence of length >= K.
FaberWalshFamily recursion_family(const LaurentAtInfinity& psi_laurent,
                                  const FocusSequence& seq, int K);

// Cauchy-integral construction: b_k(z) = (1/2pi i) \oint u_k(phi(zeta)) /
// (zeta - z) dzeta over a curve enclosing the set. Values are taken at k+1
// roots of unity scaled to sit inside the contour and the coefficients
// recovered by an inverse DFT, so the route shares no code with the
// recursion or the Laurent product.
struct ContourSpec {
    enum class Kind { z_circle, w_circle };
    Kind kind = Kind::z_circle;
    double radius = 0.0;  // 0 selects a default based on the set size
    int min_nodes = 256;
    int max_nodes = 1 << 16;
    double tol = 1e-9;
};
ComplexPolynomial contour_polynomial(const ConformalPair& pair, const FocusSequence& seq,
                                     int k, ContourSpec spec = {});

// Third route: b_k is the polynomial part of prod_{j<=k} (phi_laurent -
// alpha_j) as a formal series at infinity. tail_order 0 selects k+10.
ComplexPolynomial laurent_part_polynomial(const ConformalPair& pair, const FocusSequence& seq,
                                          int k, int tail_order = 0);
ComplexPolynomial laurent_part_polynomial(const LaurentAtInfinity& phi_lau,
                                          const FocusSequence& seq, int k);

// Chebyshev polynomial of degree n*k for the star of n rotated copies of
// [C,D]: 2 ((D^n - C^n)/4)^k T_k(P(z)) with P the degree-n map sending the
// star onto [-1,1].
ComplexPolynomial chebyshev_star_polynomial(int n, double C, double D, int k);

// Asymptotic convergence factor at z0: capacity / |U(phi(z0))|, and 1 on the
// set itself. The closed form below covers [-D,-C] u [C,D] directly.
double acf(const ConformalPair& pair, cxd z0);
double acf_generic(const ConformalPair& pair, cxd z0);
double acf_symmetric_closed_form(double C, double D, cxd z0);

// Sup norm over the boundary sample of a set descriptor, refined by node
// doubling until two consecutive estimates agree to 1e-6 relative.
double sup_norm_on_set(const ComplexPolynomial& p, const SetDescriptor& set, int density = 256);
double sup_norm_on_set(const std::function<cxd(cxd)>& f, const SetDescriptor& set,
                       int density = 256);

struct NormRow {
    int k = 0;
    double norm = 0.0;        // ||b_k|| on the set
    double normalized = 0.0;  // ||b_k|| / |b_k(z0)|, +inf when b_k(z0) = 0
    double acf_power = 0.0;   // acf(z0)^k
};
std::vector<NormRow> norm_decay_table(const FaberWalshFamily& family, const ConformalPair& pair,
                                      cxd z0, int k_max, int density = 256);

// Expansion coefficients a_k of a function in the family, via the integrals
// a_k = (1/2pi i) \oint f(psi(tau)) / u_{k+1}(tau) dtau. Entire functions
// integrate over a large circle; functions analytic only up to level lambda
// integrate over the level curves |U| = lambda * capacity (ring-structured
// domains only).
struct SeriesContour {
    bool entire = true;
    double radius = 0.0;  // w-plane circle radius, 0 selects the default
    double lambda = 0.0;  // level for entire = false, must exceed 1
    int min_nodes = 256;
    int max_nodes = 1 << 16;
    double tol = 1e-11;
};
struct SeriesExpansion {
    std::vector<cxd> coeffs;

    // Sum of a_k b_k for k <= n; family must extend at least that far.
    ComplexPolynomial partial_sum(const FaberWalshFamily& family, int n) const;
};
SeriesExpansion series_expansion(const ConformalPair& pair, const FocusSequence& seq,
                                 const std::function<cxd(cxd)>& f, int K,
                                 SeriesContour contour = {});

// Cross-checks used by the test suites; each returns the max coefficient
// deviation per degree index.

// For a set built as P^{-1} of a region with Faber map Phi~: compares
// b_{n k} against t^k F_k(P(z)) where F_k is the polynomial part of Phi~^k
// and 1/t = P'(infinity-scale) * Phi~'(infinity).
std::vector<double> faber_relation_check(const ConformalPair& preimage, const OmegaMap& omega,
                                         const PowerMap& P, int k_max);

// Affine images: b_k for alpha*E + beta must equal alpha^{-k} bt_k(alpha z +
// beta) with bt_k built on the image domain from the mapped sequence.
std::vector<double> affine_covariance_check(const ConformalPair& base,
                                            const FaberWalshFamily& base_family, cxd alpha,
                                            cxd beta, int k_max);

}  // namespace fw
