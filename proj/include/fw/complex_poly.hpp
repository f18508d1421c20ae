#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fw {

using cxd = std::complex<double>;

// Dense polynomial over C, coefficients ascending by power.
// The zero polynomial is the empty coefficient list; no silent trimming.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<cxd> coeffs) : coeffs_(std::move(coeffs)) {}

    static ComplexPolynomial constant(cxd c) { return ComplexPolynomial({c}); }
    static ComplexPolynomial identity() { return ComplexPolynomial({cxd(0.0), cxd(1.0)}); }
    // Monic polynomial with the given roots.
    static ComplexPolynomial from_roots(std::span<const cxd> roots);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree as length-1; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    cxd coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : cxd(0.0);
    }
    cxd leading() const { return coeffs_.empty() ? cxd(0.0) : coeffs_.back(); }
    std::span<const cxd> coeffs() const { return coeffs_; }

    // Horner evaluation; eval_many dispatches to the batch kernels.
    cxd eval(cxd z) const;
    void eval_many(std::span<const cxd> z, std::span<cxd> out) const;

    // (z - alpha) * p, degree grows by exactly one.
    ComplexPolynomial times_linear(cxd alpha) const;
    ComplexPolynomial derivative() const;
    // p(scale*z + shift) expanded in powers of z.
    ComplexPolynomial compose_linear(cxd scale, cxd shift) const;
    // p(z^n): coefficients spread to stride n.
    ComplexPolynomial compose_power(int n) const;
    // Drop trailing coefficients below rel_tol * max|coeff|. Only on request.
    ComplexPolynomial trimmed(double rel_tol = 1e-14) const;

    friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator*(cxd s, const ComplexPolynomial& p);

private:
    std::vector<cxd> coeffs_;
};

// Truncated Laurent expansion at infinity:
//   poly(w) + sum_{k=1..tail.size()} tail[k-1] * w^{-k}.
// A conformal map normalized at infinity has poly = w (+ constant); products of
// such series acquire higher positive powers, which poly carries exactly.
struct LaurentAtInfinity {
    ComplexPolynomial poly;
    std::vector<cxd> tail;

    cxd linear() const { return poly.coeff(1); }
    cxd constant() const { return poly.coeff(0); }
    int tail_order() const { return static_cast<int>(tail.size()); }
    cxd tail_coeff(int k) const {  // coefficient of w^{-k}, k >= 1
        return (k >= 1 && k <= tail_order()) ? tail[k - 1] : cxd(0.0);
    }
    cxd eval(cxd w) const;

    // w + sum tail[k-1] w^{-k}
    static LaurentAtInfinity normalized(std::vector<cxd> tail_coeffs);
};

// Product of two truncated expansions, tail kept to order tail_order.
// Rejects tail_order beyond what either input carries.
LaurentAtInfinity laurent_product(const LaurentAtInfinity& a, const LaurentAtInfinity& b,
                                  int tail_order);

}  // namespace fw
