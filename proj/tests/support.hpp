#pragma once

#include <random>
#include <vector>

#include "avgroups/exactpoly.hpp"
#include "avgroups/int_types.hpp"

namespace testsupport {

using avgroups::Int;
using avgroups::exactpoly::IntPolynomial;

// All randomized suites run from fixed seeds so failures reproduce.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline int uniform(std::mt19937_64& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline IntPolynomial random_polynomial(std::mt19937_64& g, int max_degree, int coeff_bound,
                                       bool monic = false) {
    int deg = uniform(g, monic ? 1 : 0, max_degree);
    std::vector<Int> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = uniform(g, -coeff_bound, coeff_bound);
    if (monic) c[deg] = 1;
    while (!monic && c[deg] == 0) c[deg] = uniform(g, -coeff_bound, coeff_bound);
    return IntPolynomial(c);
}

} // namespace testsupport
