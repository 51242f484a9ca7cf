#include "avgroups/curves.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace avgroups::curves {

using exactpoly::IntPolynomial;

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
    if (k != 1 && k != 2) throw std::invalid_argument("FiniteField: k must be 1 or 2");
    if (p < 2) throw std::invalid_argument("FiniteField: p must be prime");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("FiniteField: p must be prime");
    q_ = k == 1 ? p : p * p;
    if (k == 2) {
        // smallest irreducible t^2 + c1 t + c0, certified by root scan
        auto irreducible = [p](int c1, int c0) {
            for (int x = 0; x < p; ++x)
                if ((x * x + c1 * x + c0) % p == 0) return false;
            return true;
        };
        bool found = false;
        for (int c1 = 0; c1 < p && !found; ++c1)
            for (int c0 = 0; c0 < p && !found; ++c0)
                if (irreducible(c1, c0)) {
                    c1_ = c1;
                    c0_ = c0;
                    found = true;
                }
        if (!found) throw std::logic_error("FiniteField: no irreducible quadratic");
    }
}

int FiniteField::add(int a, int b) const {
    if (k_ == 1) return (a + b) % p_;
    return (a % p_ + b % p_) % p_ + ((a / p_ + b / p_) % p_) * p_;
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::neg(int a) const {
    if (k_ == 1) return (p_ - a % p_) % p_;
    return (p_ - a % p_) % p_ + ((p_ - a / p_) % p_) * p_;
}

int FiniteField::mul(int a, int b) const {
    if (k_ == 1) return (a * b) % p_;
    int a0 = a % p_, a1 = a / p_, b0 = b % p_, b1 = b / p_;
    int cross = a1 * b1 % p_;                                   // theta^2 = -c1 theta - c0
    int r0 = ((a0 * b0 - cross * c0_) % p_ + p_) % p_;
    int r1 = ((a0 * b1 + a1 * b0 - cross * c1_) % p_ + p_) % p_;
    return r0 + r1 * p_;
}

int FiniteField::pow(int a, long long e) const {
    int acc = scalar(1);
    int base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int FiniteField::inv(int a) const {
    if (a == 0) throw std::invalid_argument("FiniteField: inverse of zero");
    return pow(a, q_ - 2);
}

bool FiniteField::is_square(int a) const {
    if (a == 0 || p_ == 2) return true;
    return pow(a, (q_ - 1) / 2) == scalar(1);
}

int FiniteField::scalar(long long c) const {
    long long r = c % p_;
    if (r < 0) r += p_;
    return static_cast<int>(r);
}

int fp_deg(const FieldPoly& a) {
    int d = static_cast<int>(a.size()) - 1;
    while (d >= 0 && a[d] == 0) --d;
    return d;
}

FieldPoly fp_trim(FieldPoly a) {
    a.resize(fp_deg(a) + 1);
    return a;
}

FieldPoly fp_add(const FiniteField& F, const FieldPoly& a, const FieldPoly& b) {
    FieldPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        int x = i < a.size() ? a[i] : 0;
        int y = i < b.size() ? b[i] : 0;
        c[i] = F.add(x, y);
    }
    return fp_trim(std::move(c));
}

FieldPoly fp_sub(const FiniteField& F, const FieldPoly& a, const FieldPoly& b) {
    return fp_add(F, a, fp_scale(F, F.neg(F.scalar(1)), b));
}

FieldPoly fp_scale(const FiniteField& F, int c, const FieldPoly& a) {
    FieldPoly out(a);
    for (auto& x : out) x = F.mul(c, x);
    return fp_trim(std::move(out));
}

FieldPoly fp_mul(const FiniteField& F, const FieldPoly& a, const FieldPoly& b) {
    if (fp_deg(a) < 0 || fp_deg(b) < 0) return {};
    FieldPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    return fp_trim(std::move(c));
}

std::pair<FieldPoly, FieldPoly> fp_divmod(const FiniteField& F, const FieldPoly& a,
                                          const FieldPoly& b) {
    int db = fp_deg(b);
    if (db < 0) throw std::invalid_argument("fp_divmod: division by zero polynomial");
    FieldPoly r = fp_trim(a);
    int da = fp_deg(r);
    if (da < db) return {{}, r};
    FieldPoly q(da - db + 1, 0);
    int lcinv = F.inv(b[db]);
    for (int i = da; i >= db; --i) {
        if (static_cast<int>(r.size()) <= i || r[i] == 0) continue;
        int c = F.mul(r[i], lcinv);
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
    }
    return {fp_trim(std::move(q)), fp_trim(std::move(r))};
}

FieldPoly fp_mod(const FiniteField& F, const FieldPoly& a, const FieldPoly& b) {
    return fp_divmod(F, a, b).second;
}

FieldPoly fp_monic(const FiniteField& F, const FieldPoly& a) {
    int d = fp_deg(a);
    if (d < 0) return {};
    return fp_scale(F, F.inv(a[d]), a);
}

FieldPoly fp_gcd(const FiniteField& F, FieldPoly a, FieldPoly b) {
    a = fp_trim(std::move(a));
    b = fp_trim(std::move(b));
    while (fp_deg(b) >= 0) {
        FieldPoly r = fp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(F, a);
}

XgcdResult fp_xgcd(const FiniteField& F, const FieldPoly& a, const FieldPoly& b) {
    FieldPoly r0 = fp_trim(a), r1 = fp_trim(b);
    FieldPoly s0{1}, s1{}, t0{}, t1{1};
    while (fp_deg(r1) >= 0) {
        auto [q, r] = fp_divmod(F, r0, r1);
        FieldPoly s2 = fp_sub(F, s0, fp_mul(F, q, s1));
        FieldPoly t2 = fp_sub(F, t0, fp_mul(F, q, t1));
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    int d = fp_deg(r0);
    if (d < 0) return {{}, {}, {}};
    int c = F.inv(r0[d]);
    return {fp_scale(F, c, r0), fp_scale(F, c, s0), fp_scale(F, c, t0)};
}

int fp_eval(const FiniteField& F, const FieldPoly& a, int x) {
    int acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

FieldPoly fp_derivative(const FiniteField& F, const FieldPoly& a) {
    FieldPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(F.scalar(static_cast<long long>(i)), a[i]));
    return fp_trim(std::move(d));
}

namespace {

// E(x,y) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
int ec_equation(const FiniteField& F, const EllipticCurveModel& E, int x, int y) {
    int lhs = F.add(F.mul(y, y), F.add(F.mul(E.a1, F.mul(x, y)), F.mul(E.a3, y)));
    int x2 = F.mul(x, x);
    int rhs = F.add(F.mul(x2, x), F.add(F.mul(E.a2, x2), F.add(F.mul(E.a4, x), E.a6)));
    return F.sub(lhs, rhs);
}

} // namespace

bool ec_is_singular(const FiniteField& F, const EllipticCurveModel& E) {
    // A singular Weierstrass cubic has a rational singular point, so the
    // base-field scan is conclusive.
    for (int x = 0; x < F.q(); ++x)
        for (int y = 0; y < F.q(); ++y) {
            if (ec_equation(F, E, x, y) != 0) continue;
            int x2 = F.mul(x, x);
            int dx = F.sub(F.mul(E.a1, y),
                           F.add(F.mul(F.scalar(3), x2),
                                 F.add(F.mul(F.scalar(2), F.mul(E.a2, x)), E.a4)));
            int dy = F.add(F.mul(F.scalar(2), y), F.add(F.mul(E.a1, x), E.a3));
            if (dx == 0 && dy == 0) return true;
        }
    return false;
}

std::vector<ECPoint> ec_points(const FiniteField& F, const EllipticCurveModel& E) {
    std::vector<ECPoint> pts;
    pts.push_back(ECPoint{});   // infinity
    for (int x = 0; x < F.q(); ++x)
        for (int y = 0; y < F.q(); ++y)
            if (ec_equation(F, E, x, y) == 0) pts.push_back(ECPoint{x, y, false});
    return pts;
}

ECPoint ec_add(const FiniteField& F, const EllipticCurveModel& E, const ECPoint& P,
               const ECPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    auto neg_y = [&](const ECPoint& R) {
        return F.sub(F.neg(R.y), F.add(F.mul(E.a1, R.x), E.a3));
    };
    if (P.x == Q.x && Q.y == neg_y(P)) return ECPoint{};   // P + (-P)
    int lam;
    if (P.x != Q.x) {
        lam = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    } else {
        int num = F.sub(F.add(F.mul(F.scalar(3), F.mul(P.x, P.x)),
                              F.add(F.mul(F.scalar(2), F.mul(E.a2, P.x)), E.a4)),
                        F.mul(E.a1, P.y));
        int den = F.add(F.mul(F.scalar(2), P.y), F.add(F.mul(E.a1, P.x), E.a3));
        lam = F.mul(num, F.inv(den));
    }
    int x3 = F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(E.a1, lam)), E.a2), F.add(P.x, Q.x));
    int y3 = F.sub(F.sub(F.mul(lam, F.sub(P.x, x3)), P.y), F.add(F.mul(E.a1, x3), E.a3));
    return ECPoint{x3, y3, false};
}

std::vector<Int> abelian_invariant_factors(int n, const std::function<int(int, int)>& add,
                                           int identity) {
    if (n == 1) return {};
    std::vector<int> divisors;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) divisors.push_back(d);
    auto scalar_mul = [&](int k, int x) {
        int acc = identity, base = x;
        while (k > 0) {
            if (k & 1) acc = add(acc, base);
            base = add(base, base);
            k >>= 1;
        }
        return acc;
    };
    auto order_of = [&](int x) {
        for (int d : divisors)
            if (scalar_mul(d, x) == identity) return d;
        throw std::logic_error("abelian_invariant_factors: order not dividing n");
    };

    int best = identity, best_order = 1;
    for (int x = 0; x < n; ++x) {
        int o = order_of(x);
        if (o > best_order) {
            best = x;
            best_order = o;
        }
    }
    if (best_order == n) return {Int(n)};

    // quotient by <best>: label each coset by its least element id
    std::vector<int> coset(n, -1);
    for (int x = 0; x < n; ++x) {
        if (coset[x] >= 0) continue;
        int rep = x, cur = x;
        std::vector<int> members;
        do {
            members.push_back(cur);
            rep = std::min(rep, cur);
            cur = add(cur, best);
        } while (cur != x);
        for (int m : members) coset[m] = rep;
    }
    std::vector<int> reps;
    for (int x = 0; x < n; ++x)
        if (coset[x] == x) reps.push_back(x);
    std::vector<int> rep_index(n, -1);
    for (std::size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);

    auto quotient_add = [&, reps, rep_index, coset](int i, int j) {
        return rep_index[coset[add(reps[i], reps[j])]];
    };
    std::vector<Int> factors =
        abelian_invariant_factors(static_cast<int>(reps.size()), quotient_add,
                                  rep_index[coset[identity]]);
    for (const auto& d : factors)
        if (Int(best_order) % d != 0)
            throw std::logic_error("abelian_invariant_factors: quotient factor does not divide the exponent");
    factors.push_back(Int(best_order));
    return factors;
}

std::vector<EllipticClass> ec_scan(int q) {
    int p = 0, k = 0;
    switch (q) {
        case 2: p = 2; k = 1; break;
        case 3: p = 3; k = 1; break;
        case 4: p = 2; k = 2; break;
        case 5: p = 5; k = 1; break;
        case 7: p = 7; k = 1; break;
        case 9: p = 3; k = 2; break;
        default: throw std::invalid_argument("ec_scan: unsupported q");
    }
    const FiniteField F(p, k);

    std::map<std::pair<long long, std::vector<Int>>, long long> agg;
    std::vector<int> lookup(q * q);
    EllipticCurveModel E;
    for (E.a1 = 0; E.a1 < q; ++E.a1)
        for (E.a2 = 0; E.a2 < q; ++E.a2)
            for (E.a3 = 0; E.a3 < q; ++E.a3)
                for (E.a4 = 0; E.a4 < q; ++E.a4)
                    for (E.a6 = 0; E.a6 < q; ++E.a6) {
                        if (ec_is_singular(F, E)) continue;
                        std::vector<ECPoint> pts = ec_points(F, E);
                        const int n = static_cast<int>(pts.size());
                        long long trace = q + 1 - n;
                        if (trace * trace > 4LL * q)
                            throw std::logic_error("ec_scan: trace violates the Weil bound");
                        lookup.assign(q * q, -1);
                        for (int i = 1; i < n; ++i) lookup[pts[i].x * q + pts[i].y] = i;
                        auto add = [&](int i, int j) {
                            ECPoint R = ec_add(F, E, pts[i], pts[j]);
                            return R.infinity ? 0 : lookup[R.x * q + R.y];
                        };
                        std::vector<Int> inv = abelian_invariant_factors(n, add, 0);
                        agg[{trace, inv}] += 1;
                    }

    std::vector<EllipticClass> out;
    for (const auto& [key, count] : agg) {
        const auto& [trace, inv] = key;
        IntPolynomial f({Int(q), Int(-trace), Int(1)});
        EllipticClass cls;
        cls.W = weil::validate_weil(f, Int(q));
        cls.G = abgroups::GroupShape(inv);
        cls.count = count;
        out.push_back(std::move(cls));
    }
    return out;
}

bool jac_is_identity(const MumfordDivisor& D) { return fp_deg(D.u) == 0; }

MumfordDivisor jac_neg(const Genus2Curve& C, const MumfordDivisor& D) {
    return {D.u, fp_mod(C.F, fp_scale(C.F, C.F.neg(C.F.scalar(1)), D.v), D.u)};
}

MumfordDivisor jac_add(const Genus2Curve& C, const MumfordDivisor& A, const MumfordDivisor& B) {
    const FiniteField& F = C.F;
    // Cantor composition
    XgcdResult g1 = fp_xgcd(F, A.u, B.u);                       // d1 = e1 u1 + e2 u2
    XgcdResult g2 = fp_xgcd(F, g1.g, fp_add(F, A.v, B.v));      // d = c1 d1 + c2 (v1+v2)
    const FieldPoly& d = g2.g;
    FieldPoly s1 = fp_mul(F, g2.s, g1.s);
    FieldPoly s2 = fp_mul(F, g2.s, g1.t);
    const FieldPoly& s3 = g2.t;

    FieldPoly u = fp_divmod(F, fp_mul(F, A.u, B.u), fp_mul(F, d, d)).first;
    FieldPoly num = fp_add(F, fp_add(F, fp_mul(F, s1, fp_mul(F, A.u, B.v)),
                                     fp_mul(F, s2, fp_mul(F, B.u, A.v))),
                           fp_mul(F, s3, fp_add(F, fp_mul(F, A.v, B.v), C.f)));
    FieldPoly v = fp_mod(F, fp_divmod(F, num, d).first, u);

    // reduction to weight <= genus
    while (fp_deg(u) > 2) {
        FieldPoly unew = fp_divmod(F, fp_sub(F, C.f, fp_mul(F, v, v)), u).first;
        unew = fp_monic(F, unew);
        v = fp_mod(F, fp_scale(F, F.neg(F.scalar(1)), v), unew);
        u = std::move(unew);
    }
    u = fp_monic(F, u);
    if (fp_deg(u) == 0) return MumfordDivisor{};   // canonical identity (1, 0)
    return {u, fp_mod(F, v, u)};
}

std::vector<MumfordDivisor> jacobian_elements(const Genus2Curve& C) {
    const FiniteField& F = C.F;
    const int q = F.q();
    std::vector<MumfordDivisor> out;
    out.push_back(MumfordDivisor{});   // identity
    for (int a = 0; a < q; ++a) {      // weight 1: u = x - a, v = b with b^2 = f(a)
        int fa = fp_eval(F, C.f, a);
        for (int b = 0; b < q; ++b)
            if (F.mul(b, b) == fa) out.push_back({FieldPoly{F.neg(a), 1}, FieldPoly{b}});
    }
    for (int u1 = 0; u1 < q; ++u1)     // weight 2: all monic quadratics
        for (int u0 = 0; u0 < q; ++u0) {
            FieldPoly u{u0, u1, 1};
            for (int v1 = 0; v1 < q; ++v1)
                for (int v0 = 0; v0 < q; ++v0) {
                    FieldPoly v = fp_trim(FieldPoly{v0, v1});
                    FieldPoly rem = fp_mod(F, fp_sub(F, fp_mul(F, v, v), C.f), u);
                    if (fp_deg(rem) < 0) out.push_back({u, v});
                }
        }
    return out;
}

IntPolynomial weil_from_counts(int q, long long N1, long long N2) {
    long long s1 = q + 1 - N1;
    long long sum_sq = static_cast<long long>(q) * q + 1 - N2;
    if ((s1 * s1 - sum_sq) % 2 != 0)
        throw std::invalid_argument("weil_from_counts: parity violation in the point counts");
    long long s2 = (s1 * s1 - sum_sq) / 2;
    return IntPolynomial({Int(q) * q, Int(-q) * s1, Int(s2), Int(-s1), Int(1)});
}

std::pair<weil::WeilPolynomial, abgroups::GroupShape> jacobian_group(const Genus2Curve& C) {
    const FiniteField& F = C.F;
    if (F.k() != 1 || (F.p() != 3 && F.p() != 5 && F.p() != 7))
        throw std::invalid_argument("jacobian_group: unsupported field");
    const int q = F.q();
    const int deg = fp_deg(C.f);
    if (deg != 5 && deg != 6)
        throw std::invalid_argument("jacobian_group: model must have degree 5 or 6");
    if (fp_deg(fp_gcd(F, C.f, fp_derivative(F, C.f))) != 0)
        throw std::invalid_argument("jacobian_group: singular curve (f not squarefree)");

    auto affine_count = [](const FiniteField& K, const FieldPoly& f) {
        long long n = 0;
        for (int x = 0; x < K.q(); ++x) {
            int v = fp_eval(K, f, x);
            if (v == 0) n += 1;
            else if (K.is_square(v)) n += 2;
        }
        return n;
    };
    long long N1 = affine_count(F, C.f);
    if (deg == 5) N1 += 1;
    else N1 += F.is_square(C.f[6]) ? 2 : 0;   // two smooth points at infinity iff lc is a square

    FiniteField F2(F.p(), 2);
    long long N2 = affine_count(F2, C.f);   // prime-field coefficients embed as-is
    N2 += deg == 5 ? 1 : 2;                 // base-field elements are squares in F_{q^2}

    IntPolynomial fj = weil_from_counts(q, N1, N2);
    weil::WeilPolynomial W = weil::validate_weil(fj, Int(q));

    // group structure needs a quintic model; move a rational branch point
    // to infinity when the sextic has one
    Genus2Curve model = C;
    if (deg == 6) {
        int root = -1;
        for (int x = 0; x < q && root < 0; ++x)
            if (fp_eval(F, C.f, x) == 0) root = x;
        if (root < 0)
            throw std::invalid_argument(
                "jacobian_group: degree-6 model without a rational branch point is unsupported");
        // u^6 f(a + 1/u) = sum_i c_i (a u + 1)^i u^(6-i)
        FieldPoly g{0};
        for (int i = 0; i <= 6; ++i) {
            if (static_cast<int>(C.f.size()) <= i || C.f[i] == 0) continue;
            FieldPoly term{1};
            FieldPoly lin{1, root};   // 1 + a u
            for (int j = 0; j < i; ++j) term = fp_mul(F, term, lin);
            FieldPoly shift(7 - i, 0);
            shift[6 - i] = 1;
            g = fp_add(F, g, fp_scale(F, C.f[i], fp_mul(F, term, shift)));
        }
        model.f = fp_trim(std::move(g));
        if (fp_deg(model.f) != 5)
            throw std::logic_error("jacobian_group: branch-point transform did not yield a quintic");
    }

    std::vector<MumfordDivisor> elems = jacobian_elements(model);
    const Int expected = exactpoly::evaluate(fj, 1);
    if (Int(static_cast<long long>(elems.size())) != expected)
        throw std::logic_error("jacobian_group: element count differs from f(1)");

    std::map<std::pair<FieldPoly, FieldPoly>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[{elems[i].u, elems[i].v}] = static_cast<int>(i);
    auto add = [&](int i, int j) {
        MumfordDivisor R = jac_add(model, elems[i], elems[j]);
        auto it = index.find({R.u, R.v});
        if (it == index.end()) throw std::logic_error("jacobian_group: sum left the element table");
        return it->second;
    };
    std::vector<Int> inv = abelian_invariant_factors(static_cast<int>(elems.size()), add, 0);
    return {W, abgroups::GroupShape(inv)};
}

} // namespace avgroups::curves
