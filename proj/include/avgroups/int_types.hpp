#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <utility>
#include <vector>

namespace avgroups {

// All arithmetic in the library is exact. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational in lowest terms.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

// ell-adic valuation of n (sign ignored). Precondition: n != 0, ell >= 2.
int valuation(Int n, const Int& ell);

// root is set to floor(sqrt(n)) on success.
bool is_perfect_square(const Int& n, Int& root);

// Prime factorization by trial division (divisors up to 10^6), ascending
// primes. A cofactor surviving trial division is prime when it is below
// 10^12; anything larger raises resource_error.
std::vector<std::pair<Int, int>> factorize(const Int& n);

bool is_prime(const Int& n);

// Writes p and a with q = p^a when q is a prime power (same trial-division
// range as factorize).
bool is_prime_power(const Int& q, Int& p, int& a);

Rat floor_rat(const Rat& x);
Rat ceil_rat(const Rat& x);

} // namespace avgroups
