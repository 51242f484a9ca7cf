#include "avgroups/weil.hpp"

#include <algorithm>
#include <vector>

namespace avgroups::weil {

using exactpoly::IntPolynomial;

namespace {

// --- minimal rational-coefficient polynomials for Sturm counting ---

using RatPoly = std::vector<Rat>;   // ascending, no trailing zeros

void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rp_from(const IntPolynomial& f) {
    RatPoly p;
    for (const auto& c : f.coeffs()) p.emplace_back(c);
    return p;
}

int rp_degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly rp_derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rat(Int(i)) * p[i]);
    return d;
}

Rat rp_eval(const RatPoly& p, const Rat& x) {
    Rat acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    while (!a.empty() && rp_degree(a) >= rp_degree(b)) {
        Rat c = a.back() / b.back();
        int shift = rp_degree(a) - rp_degree(b);
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        rp_trim(a);
    }
    return a;
}

RatPoly rp_gcd(RatPoly a, RatPoly b) {
    while (!b.empty()) {
        RatPoly r = rp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

RatPoly rp_divexact(const RatPoly& a, const RatPoly& b) {
    RatPoly q(a.size() - b.size() + 1, Rat(0));
    RatPoly r = a;
    while (!r.empty() && rp_degree(r) >= rp_degree(b)) {
        Rat c = r.back() / b.back();
        int shift = rp_degree(r) - rp_degree(b);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
        r.pop_back();
        rp_trim(r);
    }
    return q;
}

RatPoly squarefree_part(const RatPoly& p) {
    if (rp_degree(p) <= 1) return p;
    RatPoly g = rp_gcd(p, rp_derivative(p));
    if (rp_degree(g) < 1) return p;
    return rp_divexact(p, g);
}

int sgn(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain{p, rp_derivative(p)};
    while (!chain.back().empty() && rp_degree(chain.back()) >= 0) {
        RatPoly r = rp_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
    std::vector<int> signs;
    for (const auto& p : chain) signs.push_back(p.empty() ? 0 : sgn(rp_eval(p, x)));
    return variations(signs);
}

int variations_at_plus_inf(const std::vector<RatPoly>& chain) {
    std::vector<int> signs;
    for (const auto& p : chain) signs.push_back(p.empty() ? 0 : sgn(p.back()));
    return variations(signs);
}

int variations_at_minus_inf(const std::vector<RatPoly>& chain) {
    std::vector<int> signs;
    for (const auto& p : chain) {
        if (p.empty()) {
            signs.push_back(0);
        } else {
            int s = sgn(p.back());
            if (rp_degree(p) % 2 != 0) s = -s;
            signs.push_back(s);
        }
    }
    return variations(signs);
}

// Number of distinct real roots.
int count_real_roots(const RatPoly& squarefree) {
    auto chain = sturm_chain(squarefree);
    return variations_at_minus_inf(chain) - variations_at_plus_inf(chain);
}

// Number of distinct real roots in the open interval (a, +inf); Sturm
// counts (a, b], which excludes a as required.
int count_real_roots_above(const RatPoly& squarefree, const Rat& a) {
    auto chain = sturm_chain(squarefree);
    return variations_at(chain, a) - variations_at_plus_inf(chain);
}

// --- validate_weil helpers ---

void strip_all(IntPolynomial& f, const IntPolynomial& factor) {
    while (!f.is_zero() && f.degree() >= factor.degree() && exactpoly::divides(factor, f))
        f = exactpoly::divide_exact(f, factor);
}

// f1(t) = t^(d/2) h(t + q/t) via the power-sum recursion
// p_0 = 2, p_1 = s, p_k = s p_{k-1} - q p_{k-2}.
IntPolynomial half_trace_polynomial(const IntPolynomial& f1, const Int& q) {
    int d = f1.degree();
    int half = d / 2;
    std::vector<IntPolynomial> pk(half + 1);
    pk[0] = IntPolynomial::constant(2);
    if (half >= 1) pk[1] = IntPolynomial({Int(0), Int(1)});
    for (int k = 2; k <= half; ++k)
        pk[k] = IntPolynomial({Int(0), Int(1)}) * pk[k - 1] - q * pk[k - 2];
    IntPolynomial h = IntPolynomial::constant(f1.coeff(half));
    for (int k = 1; k <= half; ++k) h = h + f1.coeff(half + k) * pk[k];
    return h;
}

// K(u) with roots the squares of the roots of h: h(s) h(-s) is even in s.
RatPoly square_roots_polynomial(const IntPolynomial& h) {
    std::vector<Int> neg(h.coeffs());
    for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
    IntPolynomial prod = h * IntPolynomial(std::move(neg));
    RatPoly K;
    for (int j = 0; 2 * j <= prod.degree(); ++j) K.emplace_back(prod.coeff(2 * j));
    rp_trim(K);
    return K;
}

} // namespace

WeilPolynomial validate_weil(const IntPolynomial& f, const Int& q) {
    WeilPolynomial W;
    W.q = q;
    if (q < 2 || !is_prime_power(q, W.p, W.a))
        throw weil_error("prime power", "q is not a prime power");
    if (f.is_zero() || !f.is_monic())
        throw weil_error("monic", "polynomial must be monic");
    if (f.degree() < 2 || f.degree() % 2 != 0)
        throw weil_error("degree", "degree must be even and >= 2");
    W.f = f;
    W.g = f.degree() / 2;

    // Step 1: strip the factors whose roots are +-sqrt(q).
    IntPolynomial f1 = f;
    strip_all(f1, IntPolynomial({Int(-q), Int(0), Int(1)}));
    Int root;
    if (is_perfect_square(q, root)) {
        strip_all(f1, IntPolynomial({Int(-root), Int(1)}));
        strip_all(f1, IntPolynomial({root, Int(1)}));
    }
    if (f1.degree() == 0) return W;

    // Step 2: self-inversive functional equation t^d f1(q/t) = q^(d/2) f1(t).
    // A stripped remainder of odd degree cannot satisfy it (its root multiset
    // would need a fixed point of a -> q/a, i.e. a root +-sqrt(q)).
    int d = f1.degree();
    if (d % 2 != 0) throw weil_error("functional equation", "odd-degree remainder");
    Int qpow = 1;   // q^(d/2 - j) while j runs down from d/2
    for (int j = d / 2; j >= 0; --j) {
        if (f1.coeff(d - j) * qpow != f1.coeff(j))
            throw weil_error("functional equation",
                             "coefficient symmetry fails at index " + std::to_string(j));
        qpow *= q;
    }

    // Steps 3-4: h real-rooted with every root square at most 4q.
    IntPolynomial h = half_trace_polynomial(f1, q);
    RatPoly hs = squarefree_part(rp_from(h));
    if (count_real_roots(hs) != rp_degree(hs))
        throw weil_error("root off circle", "trace polynomial has a non-real root");
    RatPoly K = squarefree_part(square_roots_polynomial(h));
    if (count_real_roots_above(K, Rat(4 * q)) != 0)
        throw weil_error("root off circle", "trace square exceeds 4q");
    return W;
}

const char* shape_name(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Separable: return "separable";
        case ShapeKind::PowerPair: return "power_pair";
        case ShapeKind::MixedSupersingular: return "mixed_supersingular";
        case ShapeKind::ThreefoldRepeated: return "threefold_repeated";
        case ShapeKind::ThreefoldMixed2x2: return "threefold_mixed_2x2";
        case ShapeKind::ThreefoldQuartic: return "threefold_quartic";
        case ShapeKind::Unsupported: return "unsupported";
    }
    return "unsupported";
}

IsogenyShape detect_shape(const WeilPolynomial& W) {
    IsogenyShape shape;
    auto parts = exactpoly::squarefree_decomposition(W.f);

    if (parts.size() == 1 && parts[0].second == 1) {
        shape.kind = ShapeKind::Separable;
        shape.P = W.f;
        shape.r = 1;
        return shape;
    }
    if (W.g >= 4) return shape;   // only the separable shape beyond threefolds

    if (parts.size() == 1) {
        const auto& [g1, e1] = parts[0];
        if (g1.degree() <= 2) {
            shape.kind = ShapeKind::PowerPair;
            shape.P = g1;
            shape.Q = IntPolynomial::constant(1);
            shape.r = e1;
            shape.s = 0;
        } else if (g1.degree() == 3 && e1 == 2) {
            shape.kind = ShapeKind::ThreefoldRepeated;
            shape.P = g1;
            shape.r = 2;
        }
        return shape;
    }
    if (parts.size() == 2) {
        const auto& [a, ea] = parts[0];   // multiplicities ascending, ea < eb
        const auto& [b, eb] = parts[1];
        if (a.degree() == 1 && b.degree() == 1) {
            // two supersingular lines: f = (ab)^ea * b^(eb-ea), and ab = t^2 - q
            shape.kind = ShapeKind::PowerPair;
            shape.P = a * b;
            shape.Q = b;
            shape.r = ea;
            shape.s = eb - ea;
            return shape;
        }
        if (a.degree() == 2 && ea == 1 && b.degree() == 1 && eb >= 2) {
            shape.kind = ShapeKind::MixedSupersingular;
            shape.P = a;
            shape.L = b;
            shape.r = eb;
            return shape;
        }
        if (a.degree() == 4 && ea == 1 && b.degree() == 1 && eb == 2) {
            shape.kind = ShapeKind::ThreefoldQuartic;
            shape.P = a;
            shape.L = b;
            shape.r = 2;
            return shape;
        }
        if (a.degree() == 2 && ea == 1 && b.degree() == 2 && eb == 2) {
            shape.kind = ShapeKind::ThreefoldMixed2x2;
            shape.P = b;   // the squared factor
            shape.Q = a;
            shape.r = 2;
            return shape;
        }
    }
    return shape;
}

} // namespace avgroups::weil
