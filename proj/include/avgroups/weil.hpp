#pragma once

#include <stdexcept>
#include <string>

#include "avgroups/exactpoly.hpp"
#include "avgroups/int_types.hpp"

namespace avgroups::weil {

// Monic integer polynomial of degree 2g whose complex roots all have
// absolute value sqrt(q), together with q = p^a.
struct WeilPolynomial {
    exactpoly::IntPolynomial f;
    Int q;
    Int p;
    int a = 0;
    int g = 0;
};

class weil_error : public std::invalid_argument {
public:
    weil_error(const std::string& step, const std::string& msg)
        : std::invalid_argument(step + ": " + msg), step_(step) {}
    const std::string& step() const noexcept { return step_; }

private:
    std::string step_;
};

// Exact decision, no floating point: strips the factors with rational or
// quadratic-irrational roots of modulus sqrt(q) (t^2 - q and, for square q,
// t -+ sqrt(q)), checks the self-inversive functional equation on the rest,
// rewrites it as t^(d/2) h(t + q/t), and certifies by Sturm counts that h is
// real-rooted with all root squares <= 4q. Throws weil_error naming the
// failed step.
WeilPolynomial validate_weil(const exactpoly::IntPolynomial& f, const Int& q);

enum class ShapeKind {
    Separable,            // f squarefree
    PowerPair,            // f = P^r Q^s, Q | P, deg P <= 2, P separable
    MixedSupersingular,   // f = P * L^r, deg P = 2, L = t -+ sqrt(q), L does not divide P
    ThreefoldRepeated,    // f = P^2, deg P = 3, P separable
    ThreefoldMixed2x2,    // f = P^2 Q, deg P = deg Q = 2, PQ separable
    ThreefoldQuartic,     // f = P * L^2, deg P = 4, P separable
    Unsupported,
};

const char* shape_name(ShapeKind kind);

// Tagged decomposition of f. Unused parts are the zero polynomial /
// zero counts; multiplying the populated parts back together reproduces f.
struct IsogenyShape {
    ShapeKind kind = ShapeKind::Unsupported;
    exactpoly::IntPolynomial P;
    exactpoly::IntPolynomial Q;   // PowerPair cofactor (1 when s = 0) or the 2x2 single factor
    exactpoly::IntPolynomial L;   // repeated linear factor, when present
    int r = 0;
    int s = 0;
};

// Dispatch order (most specific first): Separable, PowerPair,
// MixedSupersingular, ThreefoldRepeated, ThreefoldMixed2x2,
// ThreefoldQuartic, Unsupported. For g >= 4 only Separable and
// Unsupported are emitted.
IsogenyShape detect_shape(const WeilPolynomial& W);

} // namespace avgroups::weil
