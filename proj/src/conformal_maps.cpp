#include "fw/conformal_maps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fw {

namespace {

constexpr double kPi = std::numbers::pi;

cxd principal_sqrt(cxd z) { return std::sqrt(z); }

}  // namespace

ConformalPair symmetric_intervals_pair(double C, double D, int laurent_order) {
    if (!(0.0 < C && C < D))
        throw std::invalid_argument("symmetric_intervals_pair: need 0 < C < D");
    if (laurent_order < 2)
        throw std::invalid_argument("symmetric_intervals_pair: laurent_order too small");

    const double s = 0.5 * (D + C);        // focus modulus
    const double s2 = s * s;
    const double gap = 0.5 * (D - C);      // half-width of each interval
    const double gap2 = gap * gap;
    const double mu = 0.5 * std::sqrt(D * D - C * C);

    LemniscaticDomain dom({cxd(s, 0.0), cxd(-s, 0.0)}, {0.5, 0.5}, mu);

    // psi(w) = w sqrt(1 + gap^2 / (w^2 - s^2)), principal branch.
    auto psi = [gap2, s2](cxd w) -> cxd {
        return w * principal_sqrt(cxd(1.0) + gap2 / (w * w - s2));
    };

    // w^2 solves a quadratic in z^2; take the exterior root (larger |w^2-s^2|),
    // then the sign of w that psi sends back to z.
    auto phi = [C, D, s2, psi](cxd z) -> cxd {
        const cxd z2 = z * z;
        const cxd r = principal_sqrt((z2 - C * C) * (z2 - D * D));
        const cxd w2a = 0.5 * (z2 + C * D + r);
        const cxd w2b = 0.5 * (z2 + C * D - r);
        const cxd W = (std::abs(w2a - s2) >= std::abs(w2b - s2)) ? w2a : w2b;
        cxd w = principal_sqrt(W);
        if (std::abs(psi(-w) - z) < std::abs(psi(w) - z)) w = -w;
        return w;
    };

    // Odd tail: c_1 = gap^2/2, c_{2k+1} = gap^2 s^{2k}/2
    //   - (1/2) sum_{j=1..k} c_{2j-1} c_{2(k-j)+1}; even coefficients vanish.
    std::vector<cxd> tail(size_t(laurent_order), cxd(0.0));
    std::vector<double> odd;  // odd[k] = c_{2k+1}
    const int odd_count = (laurent_order + 1) / 2;
    odd.reserve(size_t(odd_count));
    double s_pow = 1.0;
    for (int k = 0; k < odd_count; ++k) {
        double v = 0.5 * gap2 * s_pow;
        for (int j = 1; j <= k; ++j) v -= 0.5 * odd[size_t(j - 1)] * odd[size_t(k - j)];
        odd.push_back(v);
        if (2 * k + 1 <= laurent_order) tail[size_t(2 * k)] = cxd(v, 0.0);
        s_pow *= s2;
    }

    ConformalPair pair{std::move(dom), phi, psi, LaurentAtInfinity::normalized(std::move(tail)),
                       SetDescriptor{SymmetricIntervals{C, D}}};
    return pair;
}

ConformalPair inverse_joukowski_pair(double a, double b, int laurent_order) {
    if (!(a < b)) throw std::invalid_argument("inverse_joukowski_pair: need a < b");
    if (laurent_order < 1)
        throw std::invalid_argument("inverse_joukowski_pair: laurent_order too small");
    const double mid = 0.5 * (a + b);
    const double rho = 0.25 * (b - a);

    LemniscaticDomain dom({cxd(mid, 0.0)}, {1.0}, rho);

    auto phi = [a, b, mid, rho](cxd z) -> cxd {
        const cxd r = principal_sqrt((z - a) * (z - b));
        const cxd w1 = 0.5 * (z + mid + r);
        const cxd w2 = 0.5 * (z + mid - r);
        return (std::abs(w1 - mid) >= std::abs(w2 - mid)) ? w1 : w2;
    };
    auto psi = [mid, rho](cxd w) -> cxd { return w + rho * rho / (w - mid); };

    // psi(w) = w + rho^2 sum_k mid^{k-1} w^{-k}.
    std::vector<cxd> tail(static_cast<size_t>(laurent_order));
    double p = rho * rho;
    for (int k = 1; k <= laurent_order; ++k) {
        tail[size_t(k - 1)] = cxd(p, 0.0);
        p *= mid;
    }

    return ConformalPair{std::move(dom), phi, psi,
                         LaurentAtInfinity::normalized(std::move(tail)), std::nullopt};
}

OmegaMap interval_omega() {
    OmegaMap m;
    m.to_disk = [](cxd z) -> cxd {
        const cxd r = principal_sqrt(z * z - 1.0);
        const cxd w1 = z + r, w2 = z - r;
        return std::abs(w1) >= std::abs(w2) ? w1 : w2;
    };
    m.from_disk = [](cxd v) -> cxd { return 0.5 * (v + 1.0 / v); };
    m.deriv_at_inf = 2.0;
    m.enclosing_radius = 1.3;
    return m;
}

KochLiesenRegion koch_liesen_region(cxd lambda, double opening, double R) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw std::invalid_argument("koch_liesen_region: lambda must be unimodular");
    if (!(opening > 0.0 && opening < 2.0 * kPi))
        throw std::invalid_argument("koch_liesen_region: opening out of range");
    const double quarter = 0.25 * opening;
    const double P = std::tan(quarter) + 1.0 / std::cos(quarter);
    if (!(R >= 1.0 && R < P))
        throw std::invalid_argument("koch_liesen_region: R out of [1, radius bound)");

    const double N = 0.5 * (P / R + R / P);
    const double M = (R * R - 1.0) / (2.0 * R * std::tan(quarter));
    const double t = 1.0 / (N - M);

    auto from_disk = [lambda, N, M](cxd w) -> cxd {
        return (w - lambda * N) * (w - lambda * M) / ((N - M) * w + lambda * (N * M - 1.0));
    };
    auto to_disk = [lambda, N, M](cxd z) -> cxd {
        // Larger root of w^2 - Bw + C with B = lambda(N+M) + z(N-M),
        // C = lambda^2 NM - z lambda (NM-1).
        const cxd B = lambda * (N + M) + z * (N - M);
        const cxd Cc = lambda * lambda * (N * M) - z * lambda * (N * M - 1.0);
        const cxd r = principal_sqrt(B * B - 4.0 * Cc);
        const cxd big = (std::real(std::conj(B) * r) >= 0.0) ? 0.5 * (B + r) : 0.5 * (B - r);
        cxd w = big;
        if (big != cxd(0.0)) {
            const cxd other = Cc / big;
            if (std::abs(other) > std::abs(big)) w = other;
        }
        if (std::abs(w) < 1.0 - 1e-9)
            throw std::domain_error("koch_liesen_region: point inside the region");
        return w;
    };

    OmegaMap omega;
    omega.to_disk = to_disk;
    omega.from_disk = from_disk;
    omega.deriv_at_inf = N - M;
    double rmax = 0.0;
    for (int i = 0; i < 256; ++i)
        rmax = std::max(rmax, std::abs(from_disk(std::polar(1.0, 2.0 * kPi * i / 256.0))));
    // Kept close to the region: Laurent extraction on this circle amplifies
    // roundoff by R^k, so extra margin costs tail accuracy.
    omega.enclosing_radius = 1.15 * rmax + 0.05;

    return KochLiesenRegion{std::move(omega), KochLiesenParams{P, N, M, t}};
}

double outer_modulus(const LemniscaticDomain& dom) {
    cxd q;
    if (has_ring_structure(dom, q)) {
        const int n = dom.num_foci();
        return std::pow(std::abs(q) + std::pow(dom.capacity, double(n)), 1.0 / double(n));
    }
    return dom.max_focus_modulus() + dom.capacity;
}

double laurent_extraction_radius(const LemniscaticDomain& dom) {
    return 1.2 * outer_modulus(dom);
}

double default_contour_radius(const LemniscaticDomain& dom) {
    return 2.0 * (dom.max_focus_modulus() + dom.capacity) + 1.0;
}

ConformalPair preimage_pair(const OmegaMap& omega, const PowerMap& P,
                            std::optional<SetDescriptor> set, int laurent_order) {
    if (P.power < 2) throw std::invalid_argument("preimage_pair: power must be >= 2");
    if (!(P.scale > 0.0)) throw std::invalid_argument("preimage_pair: scale must be > 0");
    const int n = P.power;
    const double alpha = P.scale, alpha0 = P.shift;

    const cxd w0 = omega.to_disk(cxd(alpha0, 0.0));  // throws if alpha0 is inside
    const double mu = std::pow(1.0 / (alpha * omega.deriv_at_inf), 1.0 / double(n));
    const double mu_n = std::pow(mu, double(n));

    const cxd ring_center = -mu_n * w0;  // foci are its n-th roots
    std::vector<cxd> foci(static_cast<size_t>(n));
    const double f_mod = std::pow(std::abs(ring_center), 1.0 / double(n));
    const double f_arg = std::arg(ring_center) / double(n);
    for (int j = 0; j < n; ++j)
        foci[size_t(j)] = std::polar(f_mod, f_arg + 2.0 * kPi * double(j) / double(n));
    LemniscaticDomain dom(std::move(foci), std::vector<double>(size_t(n), 1.0 / double(n)), mu);

    auto to_disk = omega.to_disk;
    auto from_disk = omega.from_disk;

    // Among the n-th roots of h, the one in the same sector as the reference
    // direction (the map is within a rotation of the identity per sector).
    auto sector_root = [n](cxd h, cxd ref) -> cxd {
        if (h == cxd(0.0) || ref == cxd(0.0)) return cxd(0.0);
        const double mod = std::pow(std::abs(h), 1.0 / double(n));
        const double base = std::arg(h) / double(n);
        const double target = std::arg(ref);
        double best_d = std::numeric_limits<double>::infinity();
        cxd best(0.0);
        for (int l = 0; l < n; ++l) {
            const double a = base + 2.0 * kPi * double(l) / double(n);
            double d = std::remainder(a - target, 2.0 * kPi);
            if (std::abs(d) < best_d) {
                best_d = std::abs(d);
                best = std::polar(mod, a);
            }
        }
        return best;
    };

    std::function<cxd(cxd)> phi_fn = [to_disk, sector_root, alpha, alpha0, mu_n, w0,
                                      n](cxd z) -> cxd {
        if (z == cxd(0.0)) return cxd(0.0);
        const cxd pz = alpha * std::pow(z, double(n)) + alpha0;
        const cxd h = mu_n * (to_disk(pz) - w0);
        return sector_root(h, z);
    };
    std::function<cxd(cxd)> psi_fn = [from_disk, sector_root, alpha, alpha0, mu_n, w0, n,
                                      phi_fn](cxd w) -> cxd {
        if (w == cxd(0.0)) return cxd(0.0);
        const cxd V = std::pow(w, double(n)) / mu_n + w0;
        const cxd Z = (from_disk(V) - alpha0) / alpha;
        cxd z = sector_root(Z, w);
        // Newton polish on phi(z) - w with a centered numeric derivative.
        const double target = 1e-12 * std::max(1.0, std::abs(w));
        for (int it = 0; it < 8; ++it) {
            const cxd f = phi_fn(z) - w;
            if (std::abs(f) <= target) break;
            const double h = 1e-7 * std::max(1.0, std::abs(z));
            const cxd d = (phi_fn(z + h) - phi_fn(z - h)) / (2.0 * h);
            if (d == cxd(0.0)) break;
            const cxd step = f / d;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
        }
        if (std::abs(phi_fn(z) - w) > 1e-9 * std::max(1.0, std::abs(w)))
            throw std::runtime_error("preimage_pair: psi inversion failed to converge");
        return z;
    };

    LaurentAtInfinity lau =
        extract_laurent(psi_fn, laurent_extraction_radius(dom), laurent_order);
    return ConformalPair{std::move(dom), std::move(phi_fn), std::move(psi_fn), std::move(lau),
                         std::move(set)};
}

ConformalPair affine_image_pair(const ConformalPair& base, cxd alpha, cxd beta,
                                int laurent_order) {
    if (alpha == cxd(0.0))
        throw std::invalid_argument("affine_image_pair: alpha must be nonzero");
    std::vector<cxd> foci;
    foci.reserve(base.domain.foci.size());
    for (cxd a : base.domain.foci) foci.push_back(alpha * a + beta);
    LemniscaticDomain dom(std::move(foci), base.domain.exponents,
                          std::abs(alpha) * base.domain.capacity);

    auto base_phi = base.phi;
    auto base_psi = base.psi;
    std::function<cxd(cxd)> phi = [base_phi, alpha, beta](cxd z) {
        return alpha * base_phi((z - beta) / alpha) + beta;
    };
    std::function<cxd(cxd)> psi = [base_psi, alpha, beta](cxd w) {
        return alpha * base_psi((w - beta) / alpha) + beta;
    };

    // The expansion transforms in closed form: with v = (w - beta) / alpha,
    //   alpha * (v + c0 + sum c_l v^{-l}) + beta
    //     = w + alpha*c0 + sum_l alpha^{l+1} c_l (w - beta)^{-l},
    // and (w - beta)^{-l} = sum_{m >= l} binom(m-1, m-l) beta^{m-l} w^{-m}.
    LaurentAtInfinity lau;
    lau.poly = alpha * base.psi_laurent.poly.compose_linear(1.0 / alpha, -beta / alpha) +
               ComplexPolynomial::constant(beta);
    const int L = std::min(laurent_order, base.psi_laurent.tail_order());
    lau.tail.assign(size_t(std::max(L, 0)), cxd(0.0));
    cxd alpha_pow = alpha;  // alpha^{l+1} accumulated over l
    for (int l = 1; l <= L; ++l) {
        alpha_pow *= alpha;
        const cxd c = alpha_pow * base.psi_laurent.tail_coeff(l);
        cxd expand(1.0);  // binom(m-1, m-l) beta^{m-l}, advanced in m
        for (int m = l; m <= L; ++m) {
            lau.tail[size_t(m) - 1] += c * expand;
            expand *= beta * double(m) / double(m - l + 1);
        }
    }

    std::optional<SetDescriptor> set;
    if (base.set) {
        AffineImage img;
        img.alpha = alpha;
        img.beta = beta;
        img.base = std::make_shared<SetDescriptor>(*base.set);
        set = SetDescriptor{std::move(img)};
    }
    return ConformalPair{std::move(dom), std::move(phi), std::move(psi), std::move(lau),
                         std::move(set)};
}

ConformalPair pair_from_descriptor(const SetDescriptor& set, int laurent_order) {
    validate(set);
    return std::visit(
        [&](const auto& v) -> ConformalPair {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SymmetricIntervals>) {
                return symmetric_intervals_pair(v.C, v.D, laurent_order);
            } else if constexpr (std::is_same_v<T, StarIntervals>) {
                if (v.n == 1) {
                    ConformalPair p = inverse_joukowski_pair(v.C, v.D, laurent_order);
                    p.set = SetDescriptor{v};
                    return p;
                }
                if (v.n == 2) {
                    ConformalPair p = symmetric_intervals_pair(v.C, v.D, laurent_order);
                    p.set = SetDescriptor{v};
                    return p;
                }
                const double n = double(v.n);
                const double cn = std::pow(v.C, n), dn = std::pow(v.D, n);
                const PowerMap P{2.0 / (dn - cn), v.n, -(dn + cn) / (dn - cn)};
                return preimage_pair(interval_omega(), P, SetDescriptor{v},
                                     std::min(laurent_order, 96));
            } else if constexpr (std::is_same_v<T, AffineImage>) {
                ConformalPair base = pair_from_descriptor(*v.base, laurent_order);
                return affine_image_pair(base, v.alpha, v.beta, std::min(laurent_order, 96));
            } else {
                KochLiesenRegion region = koch_liesen_region(v.lambda, v.opening, v.R);
                const PowerMap P{1.0, v.n, 0.0};
                return preimage_pair(region.map, P, SetDescriptor{v},
                                     std::min(laurent_order, 96));
            }
        },
        set.value);
}

LaurentAtInfinity extract_laurent(const std::function<cxd(cxd)>& map, double radius,
                                  int tail_order, double tol, int max_nodes) {
    if (!(radius > 0.0)) throw std::invalid_argument("extract_laurent: radius must be > 0");
    if (tail_order < 0 || tail_order > 512)
        throw std::invalid_argument("extract_laurent: tail_order out of range");
    if (double(tail_order) * std::log10(std::max(radius, 1.0)) > 290.0)
        throw std::invalid_argument("extract_laurent: tail order overflows at this radius");

    double fmax = 0.0;
    auto pass = [&](int nodes) {
        // a_m = (1/(nodes R^m)) sum_t f(R e^{i th_t}) e^{-i m th_t},
        // m = 1, 0, -1, ..., -tail_order; stored in that order.
        std::vector<cxd> sums(size_t(tail_order) + 2, cxd(0.0));
        for (int tdx = 0; tdx < nodes; ++tdx) {
            const double theta = 2.0 * kPi * double(tdx) / double(nodes);
            const cxd u = std::polar(1.0, theta);
            const cxd f = map(radius * u);
            fmax = std::max(fmax, std::abs(f));
            cxd p = std::conj(u);  // e^{-i m theta} for m = 1
            sums[0] += f * p;
            p = cxd(1.0);
            sums[1] += f;  // m = 0
            for (int k = 1; k <= tail_order; ++k) {
                p *= u;  // e^{i k theta} = e^{-i m theta} with m = -k
                sums[size_t(k) + 1] += f * p;
            }
        }
        std::vector<cxd> coeffs(size_t(tail_order) + 2);
        coeffs[0] = sums[0] / (double(nodes) * radius);
        coeffs[1] = sums[1] / double(nodes);
        double rp = radius;
        for (int k = 1; k <= tail_order; ++k) {
            coeffs[size_t(k) + 1] = sums[size_t(k) + 1] * rp / double(nodes);
            rp *= radius;
        }
        return coeffs;
    };

    int nodes = 256;
    while (nodes < 8 * (tail_order + 2)) nodes *= 2;
    std::vector<cxd> prev = pass(nodes);
    const double eps = std::numeric_limits<double>::epsilon();
    while (nodes < max_nodes) {
        nodes *= 2;
        std::vector<cxd> cur = pass(nodes);
        double scale = 1.0;
        for (const cxd& c : cur) scale = std::max(scale, std::abs(c));
        // Coefficient m sums fmax-sized terms scaled by R^{-m}; below the
        // resulting roundoff floor successive passes only shuffle noise, so
        // agreement is accepted there even when tol asks for more.
        bool ok = true;
        double rp = 1.0 / radius;
        for (size_t i = 0; i < cur.size(); ++i) {
            const double allow = std::max(tol * scale, 8.0 * eps * fmax * rp);
            if (std::abs(cur[i] - prev[i]) > allow) {
                ok = false;
                break;
            }
            rp *= radius;
        }
        if (ok) {
            LaurentAtInfinity out;
            out.poly = ComplexPolynomial({cur[1], cur[0]});
            out.tail.assign(cur.begin() + 2, cur.end());
            return out;
        }
        prev = std::move(cur);
    }
    throw std::runtime_error("extract_laurent: coefficients did not stabilize");
}

LaurentAtInfinity phi_laurent(const ConformalPair& pair, double radius, int tail_order) {
    LaurentAtInfinity lau = extract_laurent(pair.phi, radius, tail_order);
    if (std::abs(lau.linear() - 1.0) > 1e-8 || std::abs(lau.constant()) > 1e-8)
        throw std::runtime_error("phi_laurent: map is not normalized at infinity");
    return lau;
}

namespace {

using nlohmann::json;

cxd complex_from_json(const json& j) {
    if (j.is_number()) return cxd(j.get<double>(), 0.0);
    if (j.is_array()) return cxd(j.at(0).get<double>(), j.at(1).get<double>());
    return cxd(j.at("re").get<double>(), j.at("im").get<double>());
}

}  // namespace

ConformalPair tabulated_pair_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("tabulated map: invalid JSON: ") + e.what());
    }
    std::vector<cxd> foci, contour, values;
    std::vector<double> exponents;
    double mu = 0.0;
    try {
        for (const auto& f : j.at("foci")) foci.push_back(complex_from_json(f));
        for (const auto& m : j.at("exponents")) exponents.push_back(m.get<double>());
        mu = j.at("mu").get<double>();
        for (const auto& p : j.at("contour_points")) contour.push_back(complex_from_json(p));
        for (const auto& p : j.at("phi_values")) values.push_back(complex_from_json(p));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("tabulated map: bad fields: ") + e.what());
    }
    if (contour.size() != values.size() || contour.size() < 16)
        throw std::invalid_argument("tabulated map: contour/phi sample mismatch or too short");

    LemniscaticDomain dom(std::move(foci), std::move(exponents), mu);

    const size_t M = contour.size();
    std::vector<cxd> dzeta(M);
    cxd centroid(0.0);
    for (cxd z : contour) centroid += z;
    centroid /= double(M);
    double winding = 0.0;
    for (size_t i = 0; i < M; ++i) {
        const cxd prev = contour[(i + M - 1) % M], next = contour[(i + 1) % M];
        dzeta[i] = 0.5 * (next - prev);
        winding += std::arg((next - centroid) / (contour[i] - centroid));
    }
    // The Cauchy formula for the exterior needs the unbounded side on the
    // left, i.e. a clockwise contour; flip a counterclockwise one.
    if (winding > 0.0)
        for (cxd& d : dzeta) d = -d;

    auto phi = [contour, values, dzeta, M](cxd z) -> cxd {
        const cxd two_pi_i(0.0, 2.0 * kPi);
        cxd acc(0.0);
        for (size_t i = 0; i < M; ++i)
            acc += (values[i] - contour[i]) / (contour[i] - z) * dzeta[i];
        return z + acc / two_pi_i;
    };
    auto dphi = [contour, values, dzeta, M](cxd z) -> cxd {
        const cxd two_pi_i(0.0, 2.0 * kPi);
        cxd acc(0.0);
        for (size_t i = 0; i < M; ++i) {
            const cxd d = contour[i] - z;
            acc += (values[i] - contour[i]) / (d * d) * dzeta[i];
        }
        return cxd(1.0) + acc / two_pi_i;
    };
    std::function<cxd(cxd)> psi = [phi, dphi](cxd w) -> cxd {
        cxd z = w;
        const double target = 1e-12 * std::max(1.0, std::abs(w));
        for (int it = 0; it < 40; ++it) {
            const cxd f = phi(z) - w;
            if (std::abs(f) <= target) return z;
            const cxd d = dphi(z);
            if (d == cxd(0.0)) break;
            z -= f / d;
        }
        if (std::abs(phi(z) - w) > 1e-9 * std::max(1.0, std::abs(w)))
            throw std::runtime_error("tabulated map: psi inversion failed");
        return z;
    };

    double hull = 0.0;
    for (cxd z : contour) hull = std::max(hull, std::abs(z));
    const double rad = std::max(laurent_extraction_radius(dom), 1.1 * hull);
    LaurentAtInfinity lau = extract_laurent(psi, rad, 64);

    return ConformalPair{std::move(dom), std::move(phi), std::move(psi), std::move(lau),
                         std::nullopt};
}

ConformalPair tabulated_pair_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("tabulated map: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return tabulated_pair_from_json_text(ss.str());
}

std::vector<cxd> sample_set_points(const SetDescriptor& set, int density) {
    if (density < 64) throw std::invalid_argument("sample_set_points: density must be >= 64");
    return std::visit(
        [&](const auto& v) -> std::vector<cxd> {
            using T = std::decay_t<decltype(v)>;
            std::vector<cxd> pts;
            if constexpr (std::is_same_v<T, SymmetricIntervals> ||
                          std::is_same_v<T, StarIntervals>) {
                double C, D;
                int n;
                if constexpr (std::is_same_v<T, SymmetricIntervals>) {
                    C = v.C;
                    D = v.D;
                    n = 2;
                } else {
                    C = v.C;
                    D = v.D;
                    n = v.n;
                }
                const double mid = 0.5 * (C + D), half = 0.5 * (D - C);
                pts.reserve(size_t(n) * size_t(density));
                for (int j = 0; j < n; ++j) {
                    const cxd rot = std::polar(1.0, 2.0 * kPi * double(j) / double(n));
                    for (int i = 0; i < density; ++i) {
                        const double x = mid + half * std::cos(kPi * double(i) /
                                                               double(density - 1));
                        pts.push_back(rot * x);
                    }
                }
            } else if constexpr (std::is_same_v<T, AffineImage>) {
                pts = sample_set_points(*v.base, density);
                for (cxd& z : pts) z = v.alpha * z + v.beta;
            } else {
                // Boundary of the preimage: the n n-th roots of each boundary
                // point of the region (maximum principle).
                KochLiesenRegion region = koch_liesen_region(v.lambda, v.opening, v.R);
                pts.reserve(size_t(v.n) * size_t(density));
                for (int i = 0; i < density; ++i) {
                    const double theta = 2.0 * kPi * double(i) / double(density);
                    const cxd omega = region.map.from_disk(std::polar(1.0, theta));
                    const double mod = std::pow(std::abs(omega), 1.0 / double(v.n));
                    const double base = std::arg(omega) / double(v.n);
                    for (int l = 0; l < v.n; ++l)
                        pts.push_back(std::polar(
                            mod, base + 2.0 * kPi * double(l) / double(v.n)));
                }
            }
            return pts;
        },
        set.value);
}

}  // namespace fw
