#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "avgroups/abgroups.hpp"
#include "avgroups/exactpoly.hpp"
#include "avgroups/weil.hpp"

namespace avgroups::curves {

// F_p or F_{p^2}. Elements are indices 0..q-1 encoding a0 + a1*theta as
// a0 + a1*p, where theta is a root of the modulus t^2 + c1 t + c0 (the
// lexicographically smallest irreducible choice, scanning c1 then c0).
class FiniteField {
public:
    FiniteField(int p, int k);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    std::pair<int, int> modulus() const { return {c0_, c1_}; }   // k = 2 only

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, long long e) const;
    bool is_square(int a) const;   // true for 0; every element in char 2
    int scalar(long long c) const; // embed an integer via F_p

private:
    int p_, k_, q_;
    int c0_ = 0, c1_ = 0;
};

// Dense polynomial over a FiniteField, ascending coefficients, trimmed.
using FieldPoly = std::vector<int>;

int fp_deg(const FieldPoly& a);   // -1 for the zero polynomial
FieldPoly fp_trim(FieldPoly a);
FieldPoly fp_add(const FiniteField& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_sub(const FiniteField& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_mul(const FiniteField& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_scale(const FiniteField& F, int c, const FieldPoly& a);
std::pair<FieldPoly, FieldPoly> fp_divmod(const FiniteField& F, const FieldPoly& a,
                                          const FieldPoly& b);
FieldPoly fp_mod(const FiniteField& F, const FieldPoly& a, const FieldPoly& b);
FieldPoly fp_monic(const FiniteField& F, const FieldPoly& a);
FieldPoly fp_gcd(const FiniteField& F, FieldPoly a, FieldPoly b);
// g = gcd(a, b) monic with g = s*a + t*b.
struct XgcdResult {
    FieldPoly g, s, t;
};
XgcdResult fp_xgcd(const FiniteField& F, const FieldPoly& a, const FieldPoly& b);
int fp_eval(const FiniteField& F, const FieldPoly& a, int x);
FieldPoly fp_derivative(const FiniteField& F, const FieldPoly& a);

// General Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// (valid in every characteristic); coefficients are field elements.
struct EllipticCurveModel {
    int a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

struct ECPoint {
    int x = 0, y = 0;
    bool infinity = true;
};

bool ec_is_singular(const FiniteField& F, const EllipticCurveModel& E);
std::vector<ECPoint> ec_points(const FiniteField& F, const EllipticCurveModel& E);
ECPoint ec_add(const FiniteField& F, const EllipticCurveModel& E, const ECPoint& P,
               const ECPoint& Q);

struct EllipticClass {
    weil::WeilPolynomial W;
    abgroups::GroupShape G;
    long long count = 0;   // number of nonsingular models realizing (trace, group)
};

// Exhaustive scan over all q^5 Weierstrass models, aggregated by
// (trace, group structure), trace ascending then group ascending.
// q in {2, 3, 4, 5, 7, 9}.
std::vector<EllipticClass> ec_scan(int q);

// y^2 = f(x) with f squarefree of degree 5 or 6 over an odd prime field.
struct Genus2Curve {
    FiniteField F;
    FieldPoly f;
};

// Reduced Mumford pair: u monic of degree <= 2, deg v < deg u,
// u | v^2 - f; the identity is (1, 0).
struct MumfordDivisor {
    FieldPoly u{1};
    FieldPoly v{};
};

bool jac_is_identity(const MumfordDivisor& D);
MumfordDivisor jac_add(const Genus2Curve& C, const MumfordDivisor& A, const MumfordDivisor& B);
MumfordDivisor jac_neg(const Genus2Curve& C, const MumfordDivisor& D);
std::vector<MumfordDivisor> jacobian_elements(const Genus2Curve& C);

// Point counts over F_q and F_{q^2}, Weil polynomial through the power-sum
// identities, and the full group structure from Cantor arithmetic.
// q in {3, 5, 7}. Degree-6 models are moved to a quintic model through a
// rational branch point; a sextic without one is rejected.
std::pair<weil::WeilPolynomial, abgroups::GroupShape> jacobian_group(const Genus2Curve& C);

// s1 = q+1-N1, sum of root squares = q^2+1-N2, s2 = (s1^2 - that)/2;
// returns t^4 - s1 t^3 + s2 t^2 - q s1 t + q^2. Parity violations throw.
exactpoly::IntPolynomial weil_from_counts(int q, long long N1, long long N2);

// Invariant factors (ascending) of a finite abelian group presented by
// element ids 0..n-1 with an addition callback: peel a maximal-order
// cyclic summand and recurse on the quotient.
std::vector<Int> abelian_invariant_factors(int n, const std::function<int(int, int)>& add,
                                           int identity);

} // namespace avgroups::curves
