#include "avgroups/abgroups.hpp"

#include <algorithm>
#include <stdexcept>

namespace avgroups::abgroups {

GroupShape::GroupShape(std::vector<Int> invariant_factors) : d_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < d_.size(); ++i) {
        if (d_[i] < 2) throw std::invalid_argument("invariant factor must be >= 2");
        if (i > 0 && d_[i] % d_[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
}

GroupShape GroupShape::from_prime_parts(const std::map<Int, std::vector<int>>& parts) {
    std::size_t k = 0;
    for (const auto& [p, exps] : parts) {
        if (!polygons::is_ascending(exps))
            throw std::invalid_argument("prime part exponents must be ascending");
        k = std::max(k, exps.size());
    }
    // Right-align each partition so the largest exponents multiply together.
    std::vector<Int> d(k, Int(1));
    for (const auto& [p, exps] : parts) {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            int e = exps[exps.size() - 1 - i];
            Int pe = 1;
            for (int j = 0; j < e; ++j) pe *= p;
            d[k - 1 - i] *= pe;
        }
    }
    while (!d.empty() && d.front() == 1) d.erase(d.begin());
    return GroupShape(std::move(d));
}

Int GroupShape::order() const {
    Int n = 1;
    for (const auto& x : d_) n *= x;
    return n;
}

std::map<Int, std::vector<int>> GroupShape::prime_parts() const {
    std::map<Int, std::vector<int>> parts;
    for (const auto& x : d_)
        for (const auto& [p, e] : factorize(x)) parts[p].push_back(e);
    for (auto& [p, exps] : parts) std::sort(exps.begin(), exps.end());
    return parts;
}

std::vector<int> GroupShape::local_nonzero_exponents(const Int& ell) const {
    std::vector<int> exps;
    for (const auto& x : d_) {
        int v = valuation(x, ell);
        if (v > 0) exps.push_back(v);
    }
    std::sort(exps.begin(), exps.end());
    return exps;
}

int GroupShape::min_generators(const Int& ell) const {
    return static_cast<int>(local_nonzero_exponents(ell).size());
}

std::vector<std::vector<int>> partitions(int n) {
    // ascending partitions, generated with smallest part first
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int min_part) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = min_part; part <= remaining; ++part) {
            if (remaining - part != 0 && remaining - part < part) continue;
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, 1);
    return out;
}

std::vector<GroupShape> enumerate_groups(const Int& n) {
    if (n < 1) throw std::invalid_argument("enumerate_groups: order must be positive");
    std::vector<std::pair<Int, int>> fact = factorize(n);
    std::vector<GroupShape> out;
    std::map<Int, std::vector<int>> chosen;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == fact.size()) {
            out.push_back(GroupShape::from_prime_parts(chosen));
            return;
        }
        for (const auto& part : partitions(fact[idx].second)) {
            chosen[fact[idx].first] = part;
            self(self, idx + 1);
        }
        chosen.erase(fact[idx].first);
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

polygons::ExponentVector local_exponents(const GroupShape& G, const Int& ell, int rank) {
    std::vector<int> exps = G.local_nonzero_exponents(ell);
    if (static_cast<int>(exps.size()) > rank)
        throw std::invalid_argument("local_exponents: rank below minimal generator count");
    polygons::ExponentVector e(rank - exps.size(), 0);
    e.insert(e.end(), exps.begin(), exps.end());
    return e;
}

polygons::ExponentVector ring_quotient_shape(int d, const Rat& lam) {
    if (d < 1) throw std::invalid_argument("ring_quotient_shape: d must be positive");
    if (lam < 0) throw std::invalid_argument("ring_quotient_shape: lam must be nonnegative");
    Rat total = Rat(d) * lam;
    if (boost::multiprecision::denominator(total) != 1)
        throw std::invalid_argument("ring_quotient_shape: d*lam must be integral");
    Rat fl = floor_rat(lam);
    int floor_lam = static_cast<int>(boost::multiprecision::numerator(fl));
    Rat frac = lam - fl;
    Int e_big = boost::multiprecision::numerator(Rat(d) * frac);
    int e = static_cast<int>(e_big);
    polygons::ExponentVector out(d - e, floor_lam);
    out.insert(out.end(), e, floor_lam + (e > 0 ? 1 : 0));
    return out;
}

bool check_subquotient_bounds(const polygons::ExponentVector& H,
                              const polygons::ExponentVector& G, int s) {
    if (s != static_cast<int>(H.size()) || s > static_cast<int>(G.size()))
        throw std::invalid_argument("check_subquotient_bounds: length violation");
    for (int i = 0; i < s; ++i)
        if (G[i] > H[i]) return false;
    return true;
}

bool check_subquotient_bounds_dual(const polygons::ExponentVector& Q,
                                   const polygons::ExponentVector& G, int s) {
    int r = static_cast<int>(G.size());
    if (static_cast<int>(Q.size()) != r - s)
        throw std::invalid_argument("check_subquotient_bounds_dual: length violation");
    for (int i = s; i < r; ++i)
        if (G[i] < Q[i - s]) return false;
    return true;
}

} // namespace avgroups::abgroups
