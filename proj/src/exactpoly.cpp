#include "avgroups/exactpoly.hpp"

#include <stdexcept>

namespace avgroups::exactpoly {

namespace {

void trim(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

} // namespace

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    trim(coeffs_);
}

IntPolynomial::IntPolynomial(std::initializer_list<Int> coeffs)
    : IntPolynomial(std::vector<Int>(coeffs)) {}

IntPolynomial IntPolynomial::constant(Int c) {
    return IntPolynomial(std::vector<Int>{std::move(c)});
}

IntPolynomial IntPolynomial::monomial(Int c, int degree) {
    if (degree < 0) throw std::invalid_argument("monomial: negative degree");
    std::vector<Int> v(degree + 1, Int(0));
    v[degree] = std::move(c);
    return IntPolynomial(std::move(v));
}

int IntPolynomial::degree() const {
    if (is_zero()) throw std::invalid_argument("degree of the zero polynomial");
    return static_cast<int>(coeffs_.size()) - 1;
}

const Int& IntPolynomial::leading() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Int IntPolynomial::coeff(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size()) return Int(0);
    return coeffs_[i];
}

bool IntPolynomial::is_monic() const { return !is_zero() && coeffs_.back() == 1; }

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return IntPolynomial();
    std::vector<Int> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = Int(i) * coeffs_[i];
    return IntPolynomial(std::move(d));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.coeffs().size(), b.coeffs().size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<Int> c(a.coeffs());
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Int> c(a.coeffs().size() + b.coeffs().size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const Int& c, const IntPolynomial& a) {
    if (c == 0) return IntPolynomial();
    std::vector<Int> v(a.coeffs());
    for (auto& x : v) x *= c;
    return IntPolynomial(std::move(v));
}

Int evaluate(const IntPolynomial& f, const Int& a) {
    Int acc = 0;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * a + *it;
    return acc;
}

IntPolynomial reflect_at_one(const IntPolynomial& f) {
    // sum of coeff(i) * (1-t)^i, building (1-t)^i incrementally
    IntPolynomial acc;
    IntPolynomial pw = IntPolynomial::constant(1);
    const IntPolynomial one_minus_t({Int(1), Int(-1)});
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] != 0) acc = acc + f.coeffs()[i] * pw;
        if (i + 1 < f.coeffs().size()) pw = pw * one_minus_t;
    }
    return acc;
}

Int content(const IntPolynomial& f) {
    Int g = 0;
    for (const auto& c : f.coeffs()) g = boost::multiprecision::gcd(g, c);
    return g;   // 0 for the zero polynomial
}

IntPolynomial primitive_part(const IntPolynomial& f) {
    if (f.is_zero()) return f;
    Int g = content(f);
    if (f.leading() < 0) g = -g;
    std::vector<Int> c(f.coeffs());
    for (auto& x : c) x /= g;
    return IntPolynomial(std::move(c));
}

std::pair<IntPolynomial, IntPolynomial> pseudo_divmod(const IntPolynomial& f,
                                                      const IntPolynomial& d) {
    if (d.is_zero()) throw std::invalid_argument("pseudo_divmod: zero divisor");
    if (f.is_zero() || f.degree() < d.degree())
        return {IntPolynomial(), f};
    const Int lc = d.leading();
    int k = f.degree() - d.degree() + 1;
    std::vector<Int> r(f.coeffs());
    std::vector<Int> q(k, Int(0));
    for (int i = f.degree(); i >= d.degree(); --i) {
        // invariant step: r <- lc*r - r[i]*t^(i-deg d)*d, q <- lc*q + r[i]*t^(i-deg d)
        Int c = r[i];
        for (auto& x : r) x *= lc;
        for (auto& x : q) x *= lc;
        --k;
        q[k] += c;
        if (c != 0) {
            for (int j = 0; j <= d.degree(); ++j)
                r[i - d.degree() + j] -= c * d.coeffs()[j];
        }
        r.resize(i);   // leading entry is now zero by construction
    }
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    auto normalize = [](const IntPolynomial& p) {
        if (p.is_zero()) return p;
        IntPolynomial pp = primitive_part(p);
        Int c = content(p);
        return c * pp;   // same polynomial, but with positive leading coefficient
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);

    Int cd = boost::multiprecision::gcd(content(a), content(b));
    IntPolynomial A = primitive_part(a);
    IntPolynomial B = primitive_part(b);
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
        IntPolynomial r = pseudo_divmod(A, B).second;
        A = B;
        B = r.is_zero() ? IntPolynomial() : primitive_part(r);
    }
    return cd * A;
}

bool divides(const IntPolynomial& d, const IntPolynomial& f) {
    if (d.is_zero()) return f.is_zero();
    if (f.is_zero()) return true;
    if (f.degree() < d.degree()) return false;
    auto [q, r] = pseudo_divmod(f, d);
    if (!r.is_zero()) return false;
    // pseudo-quotient q satisfies lc^k f = q d; f/d is integral iff lc^k | q
    Int scale = 1;
    for (int i = 0; i < f.degree() - d.degree() + 1; ++i) scale *= d.leading();
    for (const auto& c : q.coeffs())
        if (c % scale != 0) return false;
    return true;
}

IntPolynomial divide_exact(const IntPolynomial& f, const IntPolynomial& d) {
    if (d.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    if (f.is_zero()) return f;
    auto [q, r] = pseudo_divmod(f, d);
    Int scale = 1;
    for (int i = 0; i < f.degree() - d.degree() + 1; ++i) scale *= d.leading();
    if (!r.is_zero()) throw std::invalid_argument("divide_exact: not divisible");
    std::vector<Int> c(q.coeffs());
    for (auto& x : c) {
        if (x % scale != 0) throw std::invalid_argument("divide_exact: not divisible");
        x /= scale;
    }
    return IntPolynomial(std::move(c));
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f) {
    if (f.is_zero() || !f.is_monic())
        throw std::invalid_argument("squarefree_decomposition: input must be monic");
    std::vector<std::pair<IntPolynomial, int>> parts;
    if (f.degree() == 0) return parts;

    // Yun: a = gcd(f, f'); b = f/a; d = f'/a - b'; then peel factors
    // with b <- b/a_i, d <- d/a_i - (b/a_i)'.
    IntPolynomial a = gcd(f, f.derivative());
    IntPolynomial b = divide_exact(f, a);
    IntPolynomial d = divide_exact(f.derivative(), a) - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        IntPolynomial g = gcd(b, d);
        if (g.degree() > 0) parts.emplace_back(g, i);
        b = divide_exact(b, g);
        d = divide_exact(d, g) - b.derivative();
        ++i;
    }
    return parts;
}

} // namespace avgroups::exactpoly
