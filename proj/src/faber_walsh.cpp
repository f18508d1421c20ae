#include "fw/faber_walsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Outer scale of the underlying compact set in the z-plane. Pairs with a
// descriptor sample it directly; tabulated pairs push a circle just outside
// the w-plane complement through psi.
double set_outer_scale(const ConformalPair& pair) {
    double r = 0.0;
    if (pair.set) {
        for (cxd z : sample_set_points(*pair.set, 128)) r = std::max(r, std::abs(z));
    } else {
        const double rb = 1.02 * outer_modulus(pair.domain);
        for (int i = 0; i < 128; ++i) {
            const double th = kTwoPi * (double(i) + 0.5) / 128.0;
            r = std::max(r, std::abs(pair.psi(std::polar(rb, th))));
        }
    }
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::runtime_error("set scale: boundary sample degenerate");
    return r;
}

int pow2_at_least(int n, int lo) {
    int m = std::max(1, lo);
    while (m < n) m *= 2;
    return m;
}

double max_coeff_deviation(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    const ComplexPolynomial d = a - b;
    double m = 0.0;
    for (cxd c : d.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

FaberWalshFamily recursion_family(const LaurentAtInfinity& psi_laurent, const FocusSequence& seq,
                                  int K) {
    if (K < 0) throw std::invalid_argument("recursion_family: negative degree");
    if (seq.length() < K)
        throw std::invalid_argument("recursion_family: sequence shorter than requested degree");
    if (std::abs(psi_laurent.linear() - 1.0) > 1e-9 || std::abs(psi_laurent.constant()) > 1e-9)
        throw std::invalid_argument("recursion_family: psi series not normalized at infinity");
    if (K >= 1 && psi_laurent.tail_order() < K + 2)
        throw std::invalid_argument("recursion_family: psi tail shorter than K+2");

    FaberWalshFamily fam{{}, seq};
    fam.polys.reserve(size_t(K) + 1);
    fam.polys.push_back(ComplexPolynomial::constant(1.0));
    if (K == 0) return fam;

    auto c = [&](int l) { return l >= 1 ? psi_laurent.tail_coeff(l) : cxd(0.0); };

    const cxd a1 = seq.value(1);
    fam.polys.push_back(ComplexPolynomial({-a1, cxd(1.0)}));
    if (K == 1) return fam;

    // Correction row for index 1; entry l-1 holds the coefficient series of
    // w^{-l} in u_1(psi(w)) shifted to the polynomial variable.
    std::vector<ComplexPolynomial> row(size_t(K) + 1);
    for (int l = 1; l <= K + 1; ++l)
        row[size_t(l - 1)] =
            ComplexPolynomial::constant(a1 * double(l - 1) * c(l - 1) - double(l + 1) * c(l));

    for (int k = 2; k <= K; ++k) {
        const cxd ak = seq.value(k);
        fam.polys.push_back(fam.polys[size_t(k - 1)].times_linear(ak) + row[0]);
        if (k == K) break;
        const int Lk = K - k + 2;
        std::vector<ComplexPolynomial> next(static_cast<size_t>(Lk));
        for (int l = 1; l <= Lk; ++l)
            next[size_t(l - 1)] = ((-c(l)) * fam.polys[size_t(k - 1)]) +
                                  ((-ak) * row[size_t(l - 1)]) + row[size_t(l)];
        row = std::move(next);
    }
    return fam;
}

ComplexPolynomial contour_polynomial(const ConformalPair& pair, const FocusSequence& seq, int k,
                                     ContourSpec spec) {
    if (k < 0) throw std::invalid_argument("contour_polynomial: negative degree");
    if (seq.length() < k)
        throw std::invalid_argument("contour_polynomial: sequence shorter than degree");
    if (!(spec.tol > 0.0)) throw std::invalid_argument("contour_polynomial: tolerance must be positive");

    const int m = k + 1;
    std::vector<cxd> targets(static_cast<size_t>(m));

    // Per-node integrand value and curve position, and the Cauchy weight
    // g * dzeta/(2 pi i dtheta) folded into one complex factor.
    struct Node {
        cxd z;       // position in the z-plane
        cxd weight;  // u_k-value times dzeta/dtheta / (2 pi i) * span/nodes
    };

    std::function<std::vector<Node>(int)> make_nodes;
    double target_radius = 0.0;

    if (spec.kind == ContourSpec::Kind::z_circle) {
        const double R = spec.radius > 0.0 ? spec.radius : 1.3 * set_outer_scale(pair);
        target_radius = 0.77 * R;
        make_nodes = [&pair, &seq, k, R](int nodes) {
            std::vector<Node> out(static_cast<size_t>(nodes));
            for (int i = 0; i < nodes; ++i) {
                const double th = kTwoPi * (double(i) + 0.5) / double(nodes);
                const cxd zeta = std::polar(R, th);
                const cxd w = pair.phi(zeta);
                cxd g(1.0);
                for (int j = 1; j <= k; ++j) g *= (w - seq.value(j));
                out[size_t(i)] = {zeta, g * zeta / double(nodes)};
            }
            return out;
        };
    } else {
        const double Rw =
            spec.radius > 0.0 ? spec.radius : 1.25 * outer_modulus(pair.domain);
        const auto& L = pair.psi_laurent;
        const ComplexPolynomial dpoly = L.poly.derivative();
        auto psi_prime = [&L, dpoly](cxd tau) {
            cxd s = dpoly.eval(tau);
            const cxd inv = 1.0 / tau;
            cxd tpow = inv * inv;
            for (int j = 1; j <= L.tail_order(); ++j) {
                s -= double(j) * L.tail_coeff(j) * tpow;
                tpow *= inv;
            }
            return s;
        };
        make_nodes = [&pair, &seq, k, Rw, psi_prime](int nodes) {
            std::vector<Node> out(static_cast<size_t>(nodes));
            for (int i = 0; i < nodes; ++i) {
                const double th = kTwoPi * (double(i) + 0.5) / double(nodes);
                const cxd tau = std::polar(Rw, th);
                cxd g(1.0);
                for (int j = 1; j <= k; ++j) g *= (tau - seq.value(j));
                out[size_t(i)] = {pair.psi(tau), g * psi_prime(tau) * tau / double(nodes)};
            }
            return out;
        };
        // Probe the image curve: targets must sit strictly inside it.
        double rmin = std::numeric_limits<double>::infinity();
        for (const Node& nd : make_nodes(64)) rmin = std::min(rmin, std::abs(nd.z));
        target_radius = 0.72 * rmin;
    }

    for (int t = 0; t < m; ++t)
        targets[size_t(t)] = std::polar(target_radius, kTwoPi * double(t) / double(m));

    auto run_pass = [&](int nodes) {
        const std::vector<Node> nds = make_nodes(nodes);
        // Winding check: every target must be enclosed once, otherwise the
        // Cauchy values silently lose the polynomial part.
        double wind = 0.0;
        for (size_t i = 0; i < nds.size(); ++i) {
            const cxd d0 = nds[i].z - targets[0];
            const cxd d1 = nds[(i + 1) % nds.size()].z - targets[0];
            wind += std::arg(d1 / d0);
        }
        if (std::abs(std::abs(wind) - kTwoPi) > 0.5)
            throw std::runtime_error("contour_polynomial: target not enclosed by the contour");

        std::vector<cxd> vals(size_t(m), cxd(0.0));
        for (const Node& nd : nds)
            for (int t = 0; t < m; ++t) vals[size_t(t)] += nd.weight / (nd.z - targets[size_t(t)]);

        std::vector<cxd> coef(size_t(m), cxd(0.0));
        double rj = 1.0;
        for (int j = 0; j < m; ++j) {
            cxd s(0.0);
            for (int t = 0; t < m; ++t)
                s += vals[size_t(t)] *
                     std::polar(1.0, -kTwoPi * double(j) * double(t) / double(m));
            coef[size_t(j)] = s / (double(m) * rj);
            rj *= target_radius;
        }
        return coef;
    };

    int nodes = pow2_at_least(8 * m, spec.min_nodes);
    std::vector<cxd> prev = run_pass(nodes);
    while (true) {
        nodes *= 2;
        if (nodes > spec.max_nodes)
            throw std::runtime_error("contour_polynomial: quadrature did not converge");
        std::vector<cxd> cur = run_pass(nodes);
        double scale = 0.0, diff = 0.0;
        for (size_t i = 0; i < cur.size(); ++i) {
            scale = std::max(scale, std::abs(cur[i]));
            diff = std::max(diff, std::abs(cur[i] - prev[i]));
        }
        if (diff <= spec.tol * std::max(1.0, scale)) return ComplexPolynomial(std::move(cur));
        prev = std::move(cur);
    }
}

ComplexPolynomial laurent_part_polynomial(const LaurentAtInfinity& phi_lau,
                                          const FocusSequence& seq, int k) {
    if (k < 0) throw std::invalid_argument("laurent_part_polynomial: negative degree");
    if (seq.length() < k)
        throw std::invalid_argument("laurent_part_polynomial: sequence shorter than degree");
    if (k == 0) return ComplexPolynomial::constant(1.0);
    if (phi_lau.tail_order() < k)
        throw std::invalid_argument("laurent_part_polynomial: phi tail shorter than degree");

    const int T = phi_lau.tail_order();
    auto factor = [&](int j) {
        return LaurentAtInfinity{phi_lau.poly - ComplexPolynomial::constant(seq.value(j)),
                                 phi_lau.tail};
    };
    LaurentAtInfinity acc = factor(1);
    for (int j = 2; j <= k; ++j) acc = laurent_product(acc, factor(j), T);
    return acc.poly;
}

ComplexPolynomial laurent_part_polynomial(const ConformalPair& pair, const FocusSequence& seq,
                                          int k, int tail_order) {
    if (tail_order <= 0) tail_order = k + 10;
    const double R = 1.3 * set_outer_scale(pair);
    return laurent_part_polynomial(phi_laurent(pair, R, tail_order), seq, k);
}

ComplexPolynomial chebyshev_star_polynomial(int n, double C, double D, int k) {
    if (n < 1) throw std::invalid_argument("chebyshev_star_polynomial: n must be >= 1");
    if (!(0.0 < C && C < D)) throw std::invalid_argument("chebyshev_star_polynomial: need 0 < C < D");
    if (k < 1) throw std::invalid_argument("chebyshev_star_polynomial: degree index must be >= 1");

    const double dn = std::pow(D, double(n));
    const double cn = std::pow(C, double(n));
    std::vector<cxd> pc(size_t(n) + 1, cxd(0.0));
    pc[0] = -(dn + cn) / (dn - cn);
    pc[size_t(n)] = 2.0 / (dn - cn);
    const ComplexPolynomial P(pc);

    ComplexPolynomial tkm1 = ComplexPolynomial::constant(1.0);
    ComplexPolynomial tk = P;
    for (int j = 2; j <= k; ++j) {
        ComplexPolynomial next = (cxd(2.0) * P) * tk - tkm1;
        tkm1 = std::move(tk);
        tk = std::move(next);
    }
    return (cxd(2.0 * std::pow((dn - cn) / 4.0, double(k)))) * tk;
}

double acf_symmetric_closed_form(double C, double D, cxd z0) {
    if (!(0.0 < C && C < D))
        throw std::invalid_argument("acf_symmetric_closed_form: need 0 < C < D");
    const cxd z2 = z0 * z0;
    const cxd r = std::sqrt((z2 - C * C) * (z2 - D * D));
    const cxd mid = z2 - 0.5 * (D * D + C * C);
    const double v = std::max(std::abs(mid + r), std::abs(mid - r));
    const double R = std::sqrt((D * D - C * C) / (2.0 * v));
    return (R > 1.0 - 1e-12) ? 1.0 : R;
}

double acf_generic(const ConformalPair& pair, cxd z0) {
    cxd w;
    try {
        w = pair.phi(z0);
    } catch (const std::domain_error&) {
        return 1.0;  // phi rejects points of the set itself
    }
    const double au = abs_u(pair.domain, w);
    const double mu = pair.domain.capacity;
    if (!(au > mu * (1.0 + 1e-12))) return 1.0;
    return mu / au;
}

double acf(const ConformalPair& pair, cxd z0) {
    if (pair.set && std::holds_alternative<SymmetricIntervals>(pair.set->value)) {
        const auto& s = std::get<SymmetricIntervals>(pair.set->value);
        return acf_symmetric_closed_form(s.C, s.D, z0);
    }
    return acf_generic(pair, z0);
}

namespace {

// max_on returns the sampled maximum together with an absolute roundoff floor
// below which two refinements cannot be told apart.
template <typename MaxFn>
double sup_norm_impl(const SetDescriptor& set, int density, MaxFn&& max_on) {
    if (density < 64) throw std::invalid_argument("sup_norm_on_set: density must be >= 64");
    double prev = -1.0;
    for (int d = density; d <= (1 << 20); d *= 2) {
        const auto [cur, floor] = max_on(sample_set_points(set, d));
        if (prev >= 0.0 &&
            std::abs(cur - prev) <= std::max(1e-6 * std::max(std::abs(cur), 1e-300), floor))
            return std::max(cur, prev);
        prev = cur;
    }
    throw std::runtime_error("sup_norm_on_set: refinement did not stabilize");
}

// Bound on the evaluation error of a Horner pass at z: eps times the same
// recurrence run on absolute values.
double eval_noise_bound(const ComplexPolynomial& p, cxd z) {
    const double az = std::abs(z);
    double acc = 0.0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * az + std::abs(p.coeff(i));
    return 128.0 * std::numeric_limits<double>::epsilon() * acc;
}

}  // namespace

double sup_norm_on_set(const ComplexPolynomial& p, const SetDescriptor& set, int density) {
    return sup_norm_impl(set, density, [&](const std::vector<cxd>& pts) {
        std::vector<cxd> vals(pts.size());
        p.eval_many(pts, vals);
        double m = 0.0;
        size_t arg = 0;
        for (size_t i = 0; i < vals.size(); ++i) {
            const double a = std::abs(vals[i]);
            if (a > m) {
                m = a;
                arg = i;
            }
        }
        return std::pair<double, double>{m, eval_noise_bound(p, pts[arg])};
    });
}

double sup_norm_on_set(const std::function<cxd(cxd)>& f, const SetDescriptor& set, int density) {
    return sup_norm_impl(set, density, [&](const std::vector<cxd>& pts) {
        double m = 0.0;
        for (cxd z : pts) m = std::max(m, std::abs(f(z)));
        return std::pair<double, double>{m, 0.0};
    });
}

std::vector<NormRow> norm_decay_table(const FaberWalshFamily& family, const ConformalPair& pair,
                                      cxd z0, int k_max, int density) {
    if (k_max < 0 || family.max_degree() < k_max)
        throw std::invalid_argument("norm_decay_table: family shorter than k_max");
    if (!pair.set)
        throw std::invalid_argument("norm_decay_table: pair carries no set descriptor");
    const double R = acf(pair, z0);
    std::vector<NormRow> rows;
    rows.reserve(size_t(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        NormRow row;
        row.k = k;
        row.norm = sup_norm_on_set(family[k], *pair.set, density);
        const double bz = std::abs(family[k].eval(z0));
        row.normalized =
            bz > 0.0 ? row.norm / bz : std::numeric_limits<double>::infinity();
        row.acf_power = std::pow(R, double(k));
        rows.push_back(row);
    }
    return rows;
}

ComplexPolynomial SeriesExpansion::partial_sum(const FaberWalshFamily& family, int n) const {
    if (n < 0 || size_t(n) >= coeffs.size())
        throw std::invalid_argument("partial_sum: order beyond available coefficients");
    if (family.max_degree() < n)
        throw std::invalid_argument("partial_sum: family shorter than requested order");
    ComplexPolynomial acc;
    for (int k = 0; k <= n; ++k) acc = acc + coeffs[size_t(k)] * family[k];
    return acc;
}

SeriesExpansion series_expansion(const ConformalPair& pair, const FocusSequence& seq,
                                 const std::function<cxd(cxd)>& f, int K, SeriesContour contour) {
    if (K < 0) throw std::invalid_argument("series_expansion: negative order");
    if (seq.length() < K + 1)
        throw std::invalid_argument("series_expansion: sequence shorter than K+1");
    if (!(contour.tol > 0.0)) throw std::invalid_argument("series_expansion: tolerance must be positive");
    if (!contour.entire && !(contour.lambda > 1.0))
        throw std::invalid_argument("series_expansion: level must exceed 1");

    // tau nodes with dtau/(2 pi i) quadrature weights folded in.
    auto build = [&](int per) {
        std::vector<std::pair<cxd, cxd>> nodes;
        if (contour.entire) {
            const double Rw = contour.radius > 0.0 ? contour.radius
                                                   : default_contour_radius(pair.domain);
            nodes.reserve(size_t(per));
            for (int i = 0; i < per; ++i) {
                const double th = kTwoPi * (double(i) + 0.5) / double(per);
                const cxd tau = std::polar(Rw, th);
                nodes.emplace_back(tau, tau / double(per));
            }
        } else {
            for (const LevelCurve& c : level_curves(pair.domain, contour.lambda, per)) {
                const double h = c.theta_span / double(c.points.size());
                for (size_t i = 0; i < c.points.size(); ++i)
                    nodes.emplace_back(c.points[i],
                                       c.d_theta[i] * cxd(0.0, -1.0) * (h / kTwoPi));
            }
        }
        return nodes;
    };

    auto run = [&](int per) {
        std::vector<cxd> a(size_t(K) + 1, cxd(0.0));
        for (const auto& [tau, wgt] : build(per)) {
            const cxd fv = f(pair.psi(tau));
            cxd u = tau - seq.value(1);
            a[0] += fv * wgt / u;
            for (int k = 1; k <= K; ++k) {
                u *= (tau - seq.value(k + 1));
                a[size_t(k)] += fv * wgt / u;
            }
        }
        return a;
    };

    int per = pow2_at_least(8 * (K + 2), contour.min_nodes);
    std::vector<cxd> prev = run(per);
    while (true) {
        per *= 2;
        if (per > contour.max_nodes)
            throw std::runtime_error("series_expansion: quadrature did not converge");
        std::vector<cxd> cur = run(per);
        double scale = 0.0, diff = 0.0;
        for (size_t i = 0; i < cur.size(); ++i) {
            scale = std::max(scale, std::abs(cur[i]));
            diff = std::max(diff, std::abs(cur[i] - prev[i]));
        }
        if (diff <= contour.tol * std::max(1.0, scale)) return SeriesExpansion{std::move(cur)};
        prev = std::move(cur);
    }
}

std::vector<double> faber_relation_check(const ConformalPair& preimage, const OmegaMap& omega,
                                         const PowerMap& P, int k_max) {
    if (k_max < 1) throw std::invalid_argument("faber_relation_check: k_max must be >= 1");
    const int n = P.power;
    if (n < 1) throw std::invalid_argument("faber_relation_check: power must be >= 1");
    if (preimage.psi_laurent.tail_order() < n * k_max + 2)
        throw std::invalid_argument("faber_relation_check: psi tail too short for n*k_max");

    const int KT = k_max + 8;
    const LaurentAtInfinity phiT =
        extract_laurent(omega.to_disk, omega.enclosing_radius, KT);
    const cxd t = 1.0 / (P.scale * phiT.linear());

    const FocusSequence seq = build_focus_sequence(preimage.domain, n * k_max);
    const FaberWalshFamily fam = recursion_family(preimage.psi_laurent, seq, n * k_max);

    std::vector<double> dev;
    dev.reserve(size_t(k_max));
    LaurentAtInfinity acc = phiT;
    cxd tk(1.0);
    for (int k = 1; k <= k_max; ++k) {
        tk *= t;
        const ComplexPolynomial rhs =
            tk * acc.poly.compose_linear(P.scale, P.shift).compose_power(n);
        dev.push_back(max_coeff_deviation(fam[n * k], rhs));
        if (k < k_max) acc = laurent_product(acc, phiT, KT);
    }
    return dev;
}

std::vector<double> affine_covariance_check(const ConformalPair& base,
                                            const FaberWalshFamily& base_family, cxd alpha,
                                            cxd beta, int k_max) {
    if (k_max < 0 || base_family.max_degree() < k_max)
        throw std::invalid_argument("affine_covariance_check: family shorter than k_max");
    if (alpha == cxd(0.0)) throw std::invalid_argument("affine_covariance_check: alpha must be nonzero");

    const ConformalPair image = affine_image_pair(base, alpha, beta, k_max + 8);

    // The image family must follow the mapped sequence, entry for entry.
    std::vector<int> entries;
    entries.reserve(size_t(k_max));
    for (int k = 1; k <= k_max; ++k) entries.push_back(base_family.seq.entry_index(k));
    const FocusSequence img_seq(image.domain.foci, image.domain.exponents, std::move(entries));
    const FaberWalshFamily img = recursion_family(image.psi_laurent, img_seq, k_max);

    std::vector<double> dev(size_t(k_max) + 1, 0.0);
    cxd inv_ak(1.0);
    for (int k = 0; k <= k_max; ++k) {
        const ComplexPolynomial rhs = inv_ak * img[k].compose_linear(alpha, beta);
        dev[size_t(k)] = max_coeff_deviation(base_family[k], rhs);
        inv_ak /= alpha;
    }
    return dev;
}

}  // namespace fw
