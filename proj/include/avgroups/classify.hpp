#pragma once

#include <string>
#include <vector>

#include "avgroups/abgroups.hpp"
#include "avgroups/exactpoly.hpp"
#include "avgroups/int_types.hpp"
#include "avgroups/polygons.hpp"
#include "avgroups/weil.hpp"

namespace avgroups::classify {

enum class Outcome { Yes, No, Unknown };

const char* outcome_name(Outcome o);

// One per prime dividing the group order; ell = 0 marks the global order
// check. outcome aggregation: No if any record is No, else Unknown if any
// record is Unknown, else Yes.
struct PrimeRecord {
    Int ell;
    std::string case_tag;
    Outcome ok = Outcome::Unknown;
    std::string detail;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::vector<PrimeRecord> per_prime;
};

// Separable criterion: the Newton polygon of f(1-t) at ell lies on or above
// the Hodge polygon of e. Callers guarantee sum(e) = v_ell(f(1)).
bool check_separable(const weil::WeilPolynomial& W, const Int& ell,
                     const polygons::ExponentVector& e);

// Index bounds forced on Hp(T) by a root of f(1-t) of multiplicity s whose
// field has degree d and valuation lam: with e = d*(lam - floor(lam)) and
// s' = ceil((d - e) s / d), require m_{s'} <= floor(lam), m_s <= ceil(lam),
// m_{r-s'+1} >= ceil(lam), m_{r-s+1} >= floor(lam).
struct SlopeBounds {
    int r = 0;
    int s = 0;
    int d = 0;
    Rat lam;
    int s_prime = 0;
    int floor_lam = 0;
    int ceil_lam = 0;

    bool satisfied_by(const polygons::ExponentVector& m) const;
};

SlopeBounds slope_bounds(int r, int s, int d, const Rat& lam);

// f = P^r Q^s with Q | P, P separable of degree <= 2. Decides whether the
// exponent multiset e (length r deg P + s deg Q) splits into s copies of
// v_ell(Q(1)) plus, for deg P = 2, r pairs summing to v_ell(P(1)) whose
// smaller member is at most the least slope of Np_ell(P(1-t)) (for
// deg P = 1, r copies of v_ell(P(1))).
bool check_power_pair(const exactpoly::IntPolynomial& P, const exactpoly::IntPolynomial& Q,
                      int r, int s, const Int& ell, const polygons::ExponentVector& e);

// f = P * L^r with deg P = 2, P separable, L = t -+ sqrt(q) not dividing P.
// The four conditions, with lambda_q = v_ell(|L(1)|) and lambda_1 the least
// slope of Np_ell(P(1-t)):
//   (1) Np_ell(f(1-t)) lies on or above Hp(e);
//   (2) m_r <= lambda_q;  (3) m_3 >= lambda_q;
//   (4) m_1 + m_{r+1} <= lambda_q + lambda_1.
bool check_mixed(const exactpoly::IntPolynomial& P, const exactpoly::IntPolynomial& L,
                 int r, const Int& ell, const polygons::ExponentVector& e,
                 const exactpoly::IntPolynomial& f);

// Full three-valued classification of G against the isogeny class of W.
Verdict classify_group(const weil::WeilPolynomial& W, const abgroups::GroupShape& G);

struct Enumeration {
    std::vector<abgroups::GroupShape> yes;
    std::vector<abgroups::GroupShape> unknown;
};

// Partitions all abelian groups of order f(1) by classify_group outcome
// (No omitted); deterministic order. Throws resource_error when f(1)
// exceeds the cap.
Enumeration enumerate_admissible(const weil::WeilPolynomial& W,
                                 const Int& order_cap = Int(100000000));

} // namespace avgroups::classify
