#pragma once

#include <functional>
#include <optional>
#include <string>

#include "fw/complex_poly.hpp"
#include "fw/lemniscatic.hpp"
#include "fw/set_descriptor.hpp"

namespace fw {

// Exterior map pair for a compact set E: phi maps ext(E) onto the lemniscatic
// domain, psi is its inverse, both normalized to the identity at infinity.
// psi_laurent carries w + sum c_k w^{-k} truncated for the recursions. The set
// descriptor is absent for pairs built from tabulated boundary data.
struct ConformalPair {
    LemniscaticDomain domain;
    std::function<cxd(cxd)> phi;
    std::function<cxd(cxd)> psi;
    LaurentAtInfinity psi_laurent;
    std::optional<SetDescriptor> set;
};

// Exterior Riemann map data for a simply connected compact region with real
// symmetry: to_disk maps ext(region) onto ext(unit disk), from_disk inverts it.
struct OmegaMap {
    std::function<cxd(cxd)> to_disk;
    std::function<cxd(cxd)> from_disk;
    double deriv_at_inf = 1.0;       // to_disk'(infinity) > 0
    double enclosing_radius = 2.0;   // circle |z| = r strictly containing the region
};

// P(z) = scale * z^power + shift with scale > 0, shift real.
struct PowerMap {
    double scale = 1.0;
    int power = 2;
    double shift = 0.0;
};

// [-D,-C] u [C,D]: closed-form pair with foci +-(D+C)/2, capacity
// sqrt(D^2-C^2)/2, and the odd reflection-symmetric Laurent tail.
ConformalPair symmetric_intervals_pair(double C, double D, int laurent_order = 200);

// Exterior of [a,b] onto the exterior of the disk of radius (b-a)/4 centered
// at (b+a)/2 (single-focus pair, inverse of the Joukowski map).
ConformalPair inverse_joukowski_pair(double a, double b, int laurent_order = 200);

// Omega = [-1,1] as a region map onto the exterior of the unit disk.
OmegaMap interval_omega();

// Circular-boundary region Omega(lambda, opening, R) with its Moebius exterior
// map. radius_bound limits admissible R; zero_out/zero_in are the moduli of
// the zeros of the boundary map; capacity = 1/(zero_out - zero_in) is the
// derivative of the disk-to-region map at infinity.
struct KochLiesenParams {
    double radius_bound = 0.0;  // P: admissible R lie in [1, radius_bound)
    double zero_out = 0.0;      // N
    double zero_in = 0.0;       // M
    double capacity = 0.0;      // t = 1/(N - M), the region's logarithmic capacity
};
struct KochLiesenRegion {
    OmegaMap map;
    KochLiesenParams params;
};
KochLiesenRegion koch_liesen_region(cxd lambda, double opening, double R);

// E = P^{-1}(region): n-th root structure, foci on a common ring, capacity
// (1/(scale * deriv_at_inf))^{1/power}.
ConformalPair preimage_pair(const OmegaMap& omega, const PowerMap& P,
                            std::optional<SetDescriptor> set = std::nullopt,
                            int laurent_order = 64);

// alpha * E + beta of an existing pair; Laurent tail re-extracted numerically.
ConformalPair affine_image_pair(const ConformalPair& base, cxd alpha, cxd beta,
                                int laurent_order = 64);

// Pair for a set descriptor (closed forms where available, preimage machinery
// otherwise).
ConformalPair pair_from_descriptor(const SetDescriptor& set, int laurent_order = 200);

// Laurent coefficients of a map ~ c1 w + c0 + tail at infinity by Fourier
// analysis on |w| = radius, nodes doubled until stable; throws on
// non-convergence.
LaurentAtInfinity extract_laurent(const std::function<cxd(cxd)>& map, double radius,
                                  int tail_order, double tol = 1e-11, int max_nodes = 1 << 16);
// Same for pair.phi with the normalization (linear -> 1, constant -> 0) checked.
LaurentAtInfinity phi_laurent(const ConformalPair& pair, double radius, int tail_order);

// Outer modulus of the complement of the lemniscatic domain (every |w| beyond
// it lies in the domain). Exact for ring-structured foci, a bound otherwise.
double outer_modulus(const LemniscaticDomain& dom);

// Circle radius for Laurent tail extraction: just outside the complement, so
// high-order coefficients are not drowned by the R^k roundoff amplification.
double laurent_extraction_radius(const LemniscaticDomain& dom);

// Wide circle radius enclosing the domain complement with margin, for series
// quadratures whose integrand decays with |w|.
double default_contour_radius(const LemniscaticDomain& dom);

// Pair reconstructed from tabulated boundary data:
// {foci, exponents, mu, contour_points, phi_values} with phi sampled along a
// closed contour enclosing E. phi is evaluated by the Cauchy integral outside
// that contour; psi by Newton inversion.
ConformalPair tabulated_pair_from_json_text(const std::string& text);
ConformalPair tabulated_pair_from_json_file(const std::string& path);

// Point samples of a descriptor set for sup-norm evaluation: cosine-clustered
// nodes on interval components, boundary traces on curve-bounded ones.
std::vector<cxd> sample_set_points(const SetDescriptor& set, int density);

}  // namespace fw
