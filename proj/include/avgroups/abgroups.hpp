#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "avgroups/int_types.hpp"
#include "avgroups/polygons.hpp"

namespace avgroups::abgroups {

// Finite abelian group in invariant-factor form: d_1 | d_2 | ... | d_k,
// each >= 2, ascending. The empty chain is the trivial group. Per-prime
// exponent partitions are derived views, never stored.
class GroupShape {
public:
    GroupShape() = default;
    explicit GroupShape(std::vector<Int> invariant_factors);

    static GroupShape from_prime_parts(const std::map<Int, std::vector<int>>& parts);

    const std::vector<Int>& invariant_factors() const { return d_; }
    Int order() const;
    bool is_trivial() const { return d_.empty(); }

    // Ascending primes dividing the order, each with its ascending nonzero
    // exponent partition.
    std::map<Int, std::vector<int>> prime_parts() const;

    // Nonzero exponents of the ell-part, ascending (empty if ell does not
    // divide the order).
    std::vector<int> local_nonzero_exponents(const Int& ell) const;

    // Minimal generator count of the ell-part.
    int min_generators(const Int& ell) const;

    friend bool operator==(const GroupShape&, const GroupShape&) = default;
    friend bool operator<(const GroupShape& a, const GroupShape& b) {
        return a.d_ < b.d_;
    }

private:
    std::vector<Int> d_;
};

// All isomorphism classes of abelian groups of order n, sorted
// lexicographically by invariant factors. n >= 1.
std::vector<GroupShape> enumerate_groups(const Int& n);

// Ascending exponents of the ell-part, left-padded with zeros to the given
// rank. Throws if the ell-part needs more than rank generators.
polygons::ExponentVector local_exponents(const GroupShape& G, const Int& ell, int rank);

// Exponent vector of O/alpha O for [L:Q_ell] = d and v_ell(alpha) = lam:
// (d - e) copies of floor(lam) and e copies of ceil(lam), where
// e = d*(lam - floor(lam)). Requires d*lam integral.
polygons::ExponentVector ring_quotient_shape(int d, const Rat& lam);

// For a subgroup H of G whose quotient is generated by r - s elements:
// true iff G_i <= H_i for the first s indices (both ascending). Test
// oracle, not a classifier component.
bool check_subquotient_bounds(const polygons::ExponentVector& H,
                              const polygons::ExponentVector& G, int s);

// Dual bound against the quotient exponents: G_i >= Q_{i-s} for i > s.
bool check_subquotient_bounds_dual(const polygons::ExponentVector& Q,
                                   const polygons::ExponentVector& G, int s);

// Ascending partitions of n, deterministic order (exposed for tests).
std::vector<std::vector<int>> partitions(int n);

} // namespace avgroups::abgroups
