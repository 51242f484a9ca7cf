#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "avgroups/int_types.hpp"

namespace avgroups::exactpoly {

// Univariate polynomial over Z, coefficients in ascending degree order.
// Canonical form stores no trailing zero coefficients; the zero polynomial
// is the empty sequence and has no degree (degree() rejects it rather than
// returning -1).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs);
    IntPolynomial(std::initializer_list<Int> coeffs);

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(Int c);
    static IntPolynomial monomial(Int c, int degree);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const;
    const Int& leading() const;
    Int coeff(int i) const;
    const std::vector<Int>& coeffs() const { return coeffs_; }
    bool is_monic() const;

    IntPolynomial derivative() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<Int> coeffs_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const Int& c, const IntPolynomial& a);

Int evaluate(const IntPolynomial& f, const Int& a);

// g(t) = f(1-t), by exact binomial expansion. Involution.
IntPolynomial reflect_at_one(const IntPolynomial& f);

// Yun's algorithm over Z (characteristic 0). Input must be monic and
// nonzero. Returns pairs (g_i, e_i) with distinct multiplicities e_i
// ascending, each g_i monic squarefree, the g_i pairwise coprime, and
// f = prod g_i^{e_i} exactly.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f);

// Polynomial gcd over Z via a primitive pseudo-remainder sequence.
// Result is primitive with positive leading coefficient (monic whenever
// the inputs are monic).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

Int content(const IntPolynomial& f);
IntPolynomial primitive_part(const IntPolynomial& f);

bool divides(const IntPolynomial& d, const IntPolynomial& f);
// Precondition: d | f exactly over Z.
IntPolynomial divide_exact(const IntPolynomial& f, const IntPolynomial& d);

// lc(d)^(deg f - deg d + 1) * f = q*d + r with deg r < deg d; returns (q, r).
std::pair<IntPolynomial, IntPolynomial> pseudo_divmod(const IntPolynomial& f,
                                                      const IntPolynomial& d);

} // namespace avgroups::exactpoly
