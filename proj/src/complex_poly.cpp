#include "fw/complex_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fw/kernels.hpp"

namespace fw {

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const cxd> roots) {
    ComplexPolynomial p = constant(cxd(1.0));
    for (cxd r : roots) p = p.times_linear(r);
    return p;
}

cxd ComplexPolynomial::eval(cxd z) const {
    cxd out;
    kernels::horner_eval(coeffs_, std::span<const cxd>(&z, 1), std::span<cxd>(&out, 1));
    return out;
}

void ComplexPolynomial::eval_many(std::span<const cxd> z, std::span<cxd> out) const {
    kernels::horner_eval(coeffs_, z, out);
}

ComplexPolynomial ComplexPolynomial::times_linear(cxd alpha) const {
    if (is_zero()) return {};
    std::vector<cxd> r(coeffs_.size() + 1, cxd(0.0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        r[i + 1] += coeffs_[i];
        r[i] -= alpha * coeffs_[i];
    }
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<cxd> r(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = double(i) * coeffs_[i];
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial ComplexPolynomial::compose_linear(cxd scale, cxd shift) const {
    // Horner in the substituted variable.
    ComplexPolynomial acc;
    for (int i = degree(); i >= 0; --i) {
        if (acc.is_zero()) {
            acc = constant(coeffs_[i]);
            continue;
        }
        std::vector<cxd> r(acc.coeffs_.size() + 1, cxd(0.0));
        for (size_t j = 0; j < acc.coeffs_.size(); ++j) {
            r[j + 1] += scale * acc.coeffs_[j];
            r[j] += shift * acc.coeffs_[j];
        }
        r[0] += coeffs_[i];
        acc = ComplexPolynomial(std::move(r));
    }
    return acc;
}

ComplexPolynomial ComplexPolynomial::compose_power(int n) const {
    if (n < 1) throw std::invalid_argument("compose_power: n must be >= 1");
    if (is_zero()) return {};
    std::vector<cxd> r(size_t(degree()) * n + 1, cxd(0.0));
    for (size_t i = 0; i < coeffs_.size(); ++i) r[i * n] = coeffs_[i];
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial ComplexPolynomial::trimmed(double rel_tol) const {
    double m = 0.0;
    for (cxd c : coeffs_) m = std::max(m, std::abs(c));
    if (m == 0.0) return {};
    std::vector<cxd> r = coeffs_;
    while (!r.empty() && std::abs(r.back()) <= rel_tol * m) r.pop_back();
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cxd> r(std::max(a.coeffs_.size(), b.coeffs_.size()), cxd(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cxd> r(std::max(a.coeffs_.size(), b.coeffs_.size()), cxd(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cxd> r(a.coeffs_.size() + b.coeffs_.size() - 1, cxd(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPolynomial(std::move(r));
}

ComplexPolynomial operator*(cxd s, const ComplexPolynomial& p) {
    std::vector<cxd> r = p.coeffs_;
    for (cxd& c : r) c *= s;
    return ComplexPolynomial(std::move(r));
}

cxd LaurentAtInfinity::eval(cxd w) const {
    cxd s = poly.eval(w);
    cxd iw = cxd(1.0) / w;
    cxd p = iw;
    for (cxd c : tail) {
        s += c * p;
        p *= iw;
    }
    return s;
}

LaurentAtInfinity LaurentAtInfinity::normalized(std::vector<cxd> tail_coeffs) {
    return LaurentAtInfinity{ComplexPolynomial({cxd(0.0), cxd(1.0)}), std::move(tail_coeffs)};
}

LaurentAtInfinity laurent_product(const LaurentAtInfinity& a, const LaurentAtInfinity& b,
                                  int tail_order) {
    if (tail_order < 0) throw std::invalid_argument("laurent_product: negative tail order");
    if (tail_order > a.tail_order() || tail_order > b.tail_order())
        throw std::invalid_argument("laurent_product: tail order exceeds input truncation");

    const int da = std::max(a.poly.degree(), 0);
    const int db = std::max(b.poly.degree(), 0);
    const int lo_a = -a.tail_order(), lo_b = -b.tail_order();
    // Accumulate the full convolution over available powers, then slice.
    const int lo = lo_a + lo_b, hi = da + db;
    std::vector<cxd> acc(size_t(hi - lo + 1), cxd(0.0));
    auto term = [](const LaurentAtInfinity& s, int p) {
        return p >= 0 ? s.poly.coeff(p) : s.tail_coeff(-p);
    };
    for (int i = lo_a; i <= da; ++i) {
        cxd ai = term(a, i);
        if (ai == cxd(0.0)) continue;
        for (int j = lo_b; j <= db; ++j) {
            cxd bj = term(b, j);
            if (bj == cxd(0.0)) continue;
            acc[size_t(i + j - lo)] += ai * bj;
        }
    }
    LaurentAtInfinity out;
    std::vector<cxd> pc;
    for (int p = 0; p <= hi; ++p) pc.push_back(acc[size_t(p - lo)]);
    out.poly = ComplexPolynomial(std::move(pc));
    out.tail.resize(size_t(tail_order));
    for (int k = 1; k <= tail_order; ++k) out.tail[size_t(k - 1)] = acc[size_t(-k - lo)];
    return out;
}

}  // namespace fw
