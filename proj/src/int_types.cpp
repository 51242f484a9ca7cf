#include "avgroups/int_types.hpp"

#include <stdexcept>

#include "avgroups/errors.hpp"

namespace avgroups {

namespace {

const Int kTrialLimit = 1000000;        // trial divisors up to 10^6
const Int kPrimeCertLimit = Int(kTrialLimit) * kTrialLimit;

} // namespace

int valuation(Int n, const Int& ell) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    if (ell < 2) throw std::invalid_argument("valuation base must be >= 2");
    if (n < 0) n = -n;
    int v = 0;
    while (n % ell == 0) {
        n /= ell;
        ++v;
    }
    return v;
}

bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

std::vector<std::pair<Int, int>> factorize(const Int& n) {
    if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
    std::vector<std::pair<Int, int>> out;
    Int m = n;
    auto strip = [&](const Int& d) {
        if (m % d != 0) return;
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        out.emplace_back(d, e);
    };
    strip(2);
    strip(3);
    for (Int d = 5; d <= kTrialLimit && d * d <= m; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (m > 1) {
        if (m <= kPrimeCertLimit) {
            out.emplace_back(m, 1);   // no divisor up to sqrt(m) <= 10^6, so prime
        } else {
            throw resource_error("factorize: cofactor exceeds trial-division range");
        }
    }
    return out;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

bool is_prime_power(const Int& q, Int& p, int& a) {
    if (q < 2) return false;
    std::vector<std::pair<Int, int>> f;
    try {
        f = factorize(q);
    } catch (const resource_error&) {
        return false;
    }
    if (f.size() != 1) return false;
    p = f[0].first;
    a = f[0].second;
    return true;
}

Rat floor_rat(const Rat& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    Int q = num / den;
    if (num % den != 0 && num < 0) q -= 1;
    return Rat(q);
}

Rat ceil_rat(const Rat& x) { return -floor_rat(-x); }

} // namespace avgroups
