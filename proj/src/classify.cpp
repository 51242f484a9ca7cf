#include "avgroups/classify.hpp"

#include <algorithm>
#include <stdexcept>

#include "avgroups/errors.hpp"

namespace avgroups::classify {

using abgroups::GroupShape;
using exactpoly::IntPolynomial;
using polygons::ExponentVector;
using weil::IsogenyShape;
using weil::ShapeKind;
using weil::WeilPolynomial;

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Yes: return "yes";
        case Outcome::No: return "no";
        case Outcome::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

int val_at_one(const IntPolynomial& p, const Int& ell) {
    return valuation(exactpoly::evaluate(p, 1), ell);
}

Rat least_slope(const IntPolynomial& p, const Int& ell) {
    return polygons::polygon_slopes(polygons::newton_polygon(exactpoly::reflect_at_one(p), ell))
        .front();
}

} // namespace

bool check_separable(const WeilPolynomial& W, const Int& ell, const ExponentVector& e) {
    return polygons::lies_on_or_above(
        polygons::newton_polygon(exactpoly::reflect_at_one(W.f), ell), polygons::hodge_polygon(e));
}

SlopeBounds slope_bounds(int r, int s, int d, const Rat& lam) {
    if (s < 1 || s > r) throw std::invalid_argument("slope_bounds: need 1 <= s <= r");
    if (d < 1) throw std::invalid_argument("slope_bounds: need d >= 1");
    if (lam < 0) throw std::invalid_argument("slope_bounds: lam must be nonnegative");
    Rat total = Rat(d) * lam;
    if (boost::multiprecision::denominator(total) != 1)
        throw std::invalid_argument("slope_bounds: d*lam must be integral");
    SlopeBounds b;
    b.r = r;
    b.s = s;
    b.d = d;
    b.lam = lam;
    b.floor_lam = static_cast<int>(boost::multiprecision::numerator(floor_rat(lam)));
    b.ceil_lam = static_cast<int>(boost::multiprecision::numerator(ceil_rat(lam)));
    int e_ram = static_cast<int>(boost::multiprecision::numerator(Rat(d) * (lam - floor_rat(lam))));
    b.s_prime = ((d - e_ram) * s + d - 1) / d;   // ceil
    return b;
}

bool SlopeBounds::satisfied_by(const ExponentVector& m) const {
    if (static_cast<int>(m.size()) != r)
        throw std::invalid_argument("slope_bounds: exponent vector has wrong length");
    auto at = [&](int i) { return m[i - 1]; };   // 1-based
    if (s_prime >= 1 && at(s_prime) > floor_lam) return false;
    if (at(s) > ceil_lam) return false;
    if (s_prime >= 1 && at(r - s_prime + 1) < ceil_lam) return false;
    if (at(r - s + 1) < floor_lam) return false;
    return true;
}

bool check_power_pair(const IntPolynomial& P, const IntPolynomial& Q, int r, int s,
                      const Int& ell, const ExponentVector& e) {
    if (P.is_zero() || !P.is_monic() || P.degree() > 2)
        throw std::invalid_argument("check_power_pair: P must be monic of degree <= 2");
    if (r < 1 || s < 0) throw std::invalid_argument("check_power_pair: bad multiplicities");
    const int deg_q = (s > 0) ? Q.degree() : 0;
    if (static_cast<int>(e.size()) != r * P.degree() + s * deg_q)
        throw std::invalid_argument("check_power_pair: exponent vector has wrong length");

    std::vector<int> ms(e);
    std::sort(ms.begin(), ms.end());
    if (s > 0) {
        const int c = val_at_one(Q, ell);
        for (int i = 0; i < s; ++i) {
            auto it = std::find(ms.begin(), ms.end(), c);
            if (it == ms.end()) return false;
            ms.erase(it);
        }
    }
    const int m = val_at_one(P, ell);
    if (P.degree() == 1)
        return std::all_of(ms.begin(), ms.end(), [&](int x) { return x == m; });

    // Pair the remaining 2r exponents into sums of m. The largest entry's
    // partner is forced, so the walk below visits every pairing there is.
    const Rat lam1 = least_slope(P, ell);
    while (!ms.empty()) {
        int x = ms.back();
        ms.pop_back();
        auto it = std::find(ms.begin(), ms.end(), m - x);
        if (it == ms.end()) return false;
        int y = *it;
        ms.erase(it);
        if (Rat(std::min(x, y)) > lam1) return false;
    }
    return true;
}

bool check_mixed(const IntPolynomial& P, const IntPolynomial& L, int r, const Int& ell,
                 const ExponentVector& e, const IntPolynomial& f) {
    if (P.degree() != 2 || L.degree() != 1)
        throw std::invalid_argument("check_mixed: need deg P = 2 and deg L = 1");
    if (r < 2) throw std::invalid_argument("check_mixed: repeated factor needs r >= 2");
    if (static_cast<int>(e.size()) != r + 2)
        throw std::invalid_argument("check_mixed: exponent vector has wrong length");
    const int lam_q = val_at_one(L, ell);
    const Rat lam1 = least_slope(P, ell);
    if (e[r - 1] > lam_q) return false;                       // (2) m_r <= lambda_q
    if (e[2] < lam_q) return false;                           // (3) m_3 >= lambda_q
    if (Rat(e[0] + e[r]) > Rat(lam_q) + lam1) return false;   // (4) m_1 + m_{r+1}
    return polygons::lies_on_or_above(
        polygons::newton_polygon(exactpoly::reflect_at_one(f), ell), polygons::hodge_polygon(e));
}

namespace {

struct PrimeCheck {
    Outcome ok = Outcome::Unknown;
    std::string detail;
};

PrimeCheck yes_no(bool b, const std::string& why_yes, const std::string& why_no) {
    return b ? PrimeCheck{Outcome::Yes, why_yes} : PrimeCheck{Outcome::No, why_no};
}

PrimeCheck check_at_prime(const WeilPolynomial& W, const IsogenyShape& shape,
                          const GroupShape& G, const Int& ell) {
    const IntPolynomial& f = W.f;
    const int gens = G.min_generators(ell);

    switch (shape.kind) {
        case ShapeKind::Separable: {
            if (gens > 2 * W.g)
                return {Outcome::No, "needs more generators than the Tate module rank"};
            auto e = abgroups::local_exponents(G, ell, 2 * W.g);
            return yes_no(check_separable(W, ell, e), "Np(f(1-t)) >= Hp", "Np(f(1-t)) < Hp");
        }
        case ShapeKind::PowerPair: {
            const int deg_q = (shape.s > 0) ? shape.Q.degree() : 0;
            const int rank = shape.r * shape.P.degree() + shape.s * deg_q;
            if (gens > rank)
                return {Outcome::No, "needs more generators than the Tate module rank"};
            auto e = abgroups::local_exponents(G, ell, rank);
            return yes_no(check_power_pair(shape.P, shape.Q, shape.r, shape.s, ell, e),
                          "admissible pairing of exponents exists", "no admissible pairing");
        }
        case ShapeKind::MixedSupersingular: {
            const int rank = shape.r + 2;
            if (gens > rank)
                return {Outcome::No, "needs more generators than the Tate module rank"};
            auto e = abgroups::local_exponents(G, ell, rank);
            return yes_no(check_mixed(shape.P, shape.L, shape.r, ell, e, f),
                          "conditions (1)-(4) hold", "one of conditions (1)-(4) fails");
        }
        case ShapeKind::ThreefoldRepeated: {
            const int m = val_at_one(shape.P, ell);
            if (gens < 2) return {Outcome::No, "group is annihilated by ell^v(P(1)), needs >= 2 generators"};
            if (gens == 2) {
                auto e = abgroups::local_exponents(G, ell, 2);
                return yes_no(e[0] == m && e[1] == m, "exponents are (v(P(1)), v(P(1)))",
                              "two-generator case forces exponents (v(P(1)), v(P(1)))");
            }
            if (gens == 3) {
                auto e = abgroups::local_exponents(G, ell, 3);
                if (e.back() > m) return {Outcome::No, "exponent exceeds the annihilator v(P(1))"};
                bool ok = polygons::lies_on_or_above(
                    polygons::newton_polygon(exactpoly::reflect_at_one(shape.P), ell),
                    polygons::hodge_polygon(polygons::dual_exponents(e, m)));
                return yes_no(ok, "Np(P(1-t)) >= dual Hodge polygon", "Np(P(1-t)) < dual Hodge polygon");
            }
            return {Outcome::Unknown, "more than 3 generators: unclassified range"};
        }
        case ShapeKind::ThreefoldMixed2x2: {
            const int vp = val_at_one(shape.P, ell);
            const int vq = val_at_one(shape.Q, ell);
            const int m = vp + vq;
            if (vp == 0) {
                // the squared factor is invertible at ell, so only the rank-2
                // Q-part can contribute; plain polygon criterion applies
                if (gens > 2) return {Outcome::No, "needs more generators than the Q-part rank"};
                auto e = abgroups::local_exponents(G, ell, 2);
                bool ok = polygons::lies_on_or_above(
                    polygons::newton_polygon(exactpoly::reflect_at_one(shape.Q), ell),
                    polygons::hodge_polygon(e));
                return yes_no(ok, "Np(Q(1-t)) >= Hp (P-part trivial at ell)",
                              "Np(Q(1-t)) < Hp (P-part trivial at ell)");
            }
            if (gens < 2) return {Outcome::No, "group is annihilated by ell^v(P(1)Q(1)), needs >= 2 generators"};
            if (gens == 2) {
                auto e = abgroups::local_exponents(G, ell, 2);
                if (e.back() > m) return {Outcome::No, "exponent exceeds the annihilator v(P(1)Q(1))"};
                bool ok = polygons::lies_on_or_above(
                    polygons::newton_polygon(exactpoly::reflect_at_one(shape.Q), ell),
                    polygons::hodge_polygon(polygons::dual_exponents(e, m)));
                return yes_no(ok, "Np(Q(1-t)) >= dual Hodge polygon", "Np(Q(1-t)) < dual Hodge polygon");
            }
            return {Outcome::Unknown, "more than 2 generators: unclassified range"};
        }
        case ShapeKind::ThreefoldQuartic: {
            const int lam_q = val_at_one(shape.L, ell);
            const int vp = val_at_one(shape.P, ell);
            const int m = vp + lam_q;
            if (lam_q == 0) {
                // repeated supersingular factor invertible at ell: only the
                // rank-4 separable P-part contributes
                if (gens > 4) return {Outcome::No, "needs more generators than the P-part rank"};
                auto e = abgroups::local_exponents(G, ell, 4);
                bool ok = polygons::lies_on_or_above(
                    polygons::newton_polygon(exactpoly::reflect_at_one(shape.P), ell),
                    polygons::hodge_polygon(e));
                return yes_no(ok, "Np(P(1-t)) >= Hp (L-part trivial at ell)",
                              "Np(P(1-t)) < Hp (L-part trivial at ell)");
            }
            if (gens < 2) return {Outcome::No, "group is annihilated by ell^(v(P(1))+lambda_q), needs >= 2 generators"};
            if (gens == 2) {
                auto e = abgroups::local_exponents(G, ell, 2);
                if (e.back() > m) return {Outcome::No, "exponent exceeds the annihilator"};
                polygons::ExponentVector dual{0, 0, m - e[1], m - e[0]};
                bool ok = polygons::lies_on_or_above(
                    polygons::newton_polygon(exactpoly::reflect_at_one(shape.P), ell),
                    polygons::hodge_polygon(dual));
                return yes_no(ok, "Np(P(1-t)) >= (0,0,m-m2,m-m1) Hodge polygon",
                              "Np(P(1-t)) < (0,0,m-m2,m-m1) Hodge polygon");
            }
            return {Outcome::Unknown, "more than 2 generators: unclassified range"};
        }
        case ShapeKind::Unsupported:
            return {Outcome::Unknown, "polynomial shape not classified"};
    }
    return {Outcome::Unknown, "polynomial shape not classified"};
}

} // namespace

Verdict classify_group(const WeilPolynomial& W, const GroupShape& G) {
    Verdict v;
    const Int order = exactpoly::evaluate(W.f, 1);
    if (G.order() != order) {
        v.outcome = Outcome::No;
        v.per_prime.push_back({Int(0), "order", Outcome::No, "group order differs from f(1)"});
        return v;
    }

    const IsogenyShape shape = weil::detect_shape(W);
    bool any_no = false, any_unknown = false;
    for (const auto& [ell, exps] : G.prime_parts()) {
        PrimeCheck pc = check_at_prime(W, shape, G, ell);
        if (pc.ok == Outcome::Yes) {
            // every Yes must also clear the global necessary polygon bound
            bool global_ok = G.min_generators(ell) <= 2 * W.g &&
                             check_separable(W, ell, abgroups::local_exponents(G, ell, 2 * W.g));
            if (!global_ok) pc = {Outcome::No, "global polygon bound Np(f(1-t)) >= Hp fails"};
        }
        any_no = any_no || pc.ok == Outcome::No;
        any_unknown = any_unknown || pc.ok == Outcome::Unknown;
        v.per_prime.push_back({ell, shape_name(shape.kind), pc.ok, pc.detail});
    }
    v.outcome = any_no ? Outcome::No : (any_unknown ? Outcome::Unknown : Outcome::Yes);
    return v;
}

Enumeration enumerate_admissible(const WeilPolynomial& W, const Int& order_cap) {
    Enumeration out;
    const Int order = exactpoly::evaluate(W.f, 1);
    if (order < 1) return out;   // no finite group has nonpositive order
    if (order > order_cap)
        throw resource_error("enumerate_admissible: f(1) exceeds the enumeration cap");
    for (const auto& G : abgroups::enumerate_groups(order)) {
        Verdict v = classify_group(W, G);
        if (v.outcome == Outcome::Yes) out.yes.push_back(G);
        else if (v.outcome == Outcome::Unknown) out.unknown.push_back(G);
    }
    return out;
}

} // namespace avgroups::classify
