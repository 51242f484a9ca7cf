#include <doctest.h>

#include <algorithm>
#include <map>

#include "avgroups/abgroups.hpp"
#include "avgroups/errors.hpp"
#include "avgroups/tatemod.hpp"
#include "avgroups/textio.hpp"
#include "support.hpp"

using namespace avgroups;
using abgroups::GroupShape;
using polygons::ExponentVector;

namespace {

GroupShape make_group(std::vector<Int> d) { return GroupShape(std::move(d)); }

} // namespace

TEST_CASE("enumerate_groups worked examples") {
    auto g4 = abgroups::enumerate_groups(4);
    REQUIRE(g4.size() == 2);
    CHECK(g4[0] == make_group({2, 2}));
    CHECK(g4[1] == make_group({4}));

    auto g10 = abgroups::enumerate_groups(10);
    REQUIRE(g10.size() == 1);
    CHECK(g10[0] == make_group({10}));

    CHECK(abgroups::enumerate_groups(16).size() == 5);
    CHECK(abgroups::enumerate_groups(1).size() == 1);   // the trivial group
    CHECK(abgroups::enumerate_groups(1)[0].is_trivial());
    CHECK_THROWS_AS(abgroups::enumerate_groups(0), std::invalid_argument);
}

TEST_CASE("group count equals the product of partition counts for all n <= 2000") {
    // p(k) for k <= 11; exponents of n <= 2000 stay below this
    const int partition_count[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56};
    for (int n = 1; n <= 2000; ++n) {
        long expected = 1;
        for (const auto& [p, e] : factorize(n)) expected *= partition_count[e];
        CHECK(static_cast<long>(abgroups::enumerate_groups(n).size()) == expected);
    }
}

TEST_CASE("local_exponents worked examples") {
    CHECK(abgroups::local_exponents(make_group({10}), 2, 4) == ExponentVector{0, 0, 0, 1});
    CHECK(abgroups::local_exponents(make_group({2, 6}), 2, 4) == ExponentVector{0, 0, 1, 1});
    CHECK(abgroups::local_exponents(make_group({4, 4}), 2, 2) == ExponentVector{2, 2});
    CHECK_THROWS_AS(abgroups::local_exponents(make_group({2, 2, 2}), 2, 2), std::invalid_argument);
}

TEST_CASE("ring_quotient_shape instances") {
    CHECK(abgroups::ring_quotient_shape(2, Rat(3) / 2) == ExponentVector{1, 2});
    CHECK(abgroups::ring_quotient_shape(1, 2) == ExponentVector{2});
    CHECK(abgroups::ring_quotient_shape(3, Rat(5) / 3) == ExponentVector{1, 2, 2});
    CHECK_THROWS_AS(abgroups::ring_quotient_shape(2, Rat(1) / 3), std::invalid_argument);
}

TEST_CASE("ring_quotient_shape total is d*lam") {
    auto g = testsupport::rng(20240808);
    for (int i = 0; i < 500; ++i) {
        int d = testsupport::uniform(g, 1, 8);
        int total = testsupport::uniform(g, 0, 24);
        Rat lam = Rat(total) / d;
        auto e = abgroups::ring_quotient_shape(d, lam);
        CHECK(static_cast<int>(e.size()) == d);
        int sum = 0;
        for (int x : e) sum += x;
        CHECK(sum == total);
        CHECK(polygons::is_ascending(e));
    }
}

TEST_CASE("check_subquotient_bounds worked examples") {
    CHECK(abgroups::check_subquotient_bounds({1, 2}, {0, 1, 2, 3}, 2));
    CHECK_FALSE(abgroups::check_subquotient_bounds({0, 1}, {1, 1, 2, 3}, 2));
    CHECK(abgroups::check_subquotient_bounds({0, 1, 2, 3}, {0, 1, 2, 3}, 4));
    CHECK_THROWS_AS(abgroups::check_subquotient_bounds({1, 2, 3}, {0, 1}, 3),
                    std::invalid_argument);
}

TEST_CASE("invariant factors and prime parts are mutually inverse") {
    auto g = testsupport::rng(20240809);
    for (int i = 0; i < 1000; ++i) {
        long long n = testsupport::uniform(g, 1, 1000000);
        auto groups = abgroups::enumerate_groups(Int(n));
        const GroupShape& G = groups[testsupport::uniform(g, 0, static_cast<int>(groups.size()) - 1)];
        CHECK(GroupShape::from_prime_parts(G.prime_parts()) == G);
        CHECK(G.order() == n);
    }
}

TEST_CASE("group text format round trip") {
    CHECK(textio::parse_invariant_factors("2,6") == std::vector<Int>{2, 6});
    CHECK(textio::parse_invariant_factors("").empty());
    CHECK(textio::invariant_factors_to_string({2, 6}) == "2,6");
    CHECK_THROWS_AS(textio::parse_invariant_factors("2,3"), parse_error);
    CHECK_THROWS_AS(textio::parse_invariant_factors("1,2"), parse_error);
    CHECK_THROWS_AS(textio::parse_invariant_factors("6,2"), parse_error);
}

// Subgroup lemma on explicitly constructed pairs: H is generated by random
// elements of G = prod Z/ell^{m_i}; its shape and the quotient's shape are
// read off integer-matrix cokernels.
TEST_CASE("subquotient bounds hold for random subgroup lattices") {
    auto g = testsupport::rng(20240810);
    const Int ells[] = {2, 3};
    int tested = 0;
    for (int iter = 0; iter < 2000 && tested < 500; ++iter) {
        const Int ell = ells[testsupport::uniform(g, 0, 1)];
        const int r_amb = testsupport::uniform(g, 1, 4);
        ExponentVector mg(r_amb);
        int total = 0;
        for (auto& x : mg) {
            x = testsupport::uniform(g, 0, 3);
            total += x;
        }
        if (total == 0 || total > 8) continue;
        std::sort(mg.begin(), mg.end());

        // D = diag(ell^{m_i}); subgroup H generated by random columns
        tatemod::IntMatrix D(r_amb, r_amb);
        std::vector<Int> ell_pow(r_amb);
        for (int i = 0; i < r_amb; ++i) {
            Int pe = 1;
            for (int k = 0; k < mg[i]; ++k) pe *= ell;
            ell_pow[i] = pe;
            D.at(i, i) = pe;
        }
        const int ngen = testsupport::uniform(g, 1, 3);
        tatemod::IntMatrix gen(r_amb, ngen + r_amb);
        for (int j = 0; j < ngen; ++j)
            for (int i = 0; i < r_amb; ++i)
                gen.at(i, j) = testsupport::uniform(g, 0, static_cast<int>(ell_pow[i]) - 1);
        for (int i = 0; i < r_amb; ++i) gen.at(i, ngen + i) = ell_pow[i];

        // B spans the preimage lattice of H, so H = B/D and G/H = Z^r/B
        tatemod::IntMatrix B = tatemod::column_hnf(gen);
        tatemod::IntMatrix Binv_D = tatemod::adjugate(B) * D;
        Int detB = tatemod::determinant(B);
        for (int i = 0; i < r_amb; ++i)
            for (int j = 0; j < r_amb; ++j) {
                REQUIRE(Binv_D.at(i, j) % detB == 0);
                Binv_D.at(i, j) /= detB;
            }
        ExponentVector h_exps, q_exps;
        for (int x : tatemod::cokernel_exponents(Binv_D, ell))
            if (x > 0) h_exps.push_back(x);
        for (int x : tatemod::cokernel_exponents(B, ell))
            if (x > 0) q_exps.push_back(x);

        // ambient rank: enough generators for H plus enough for the quotient
        const int s = static_cast<int>(h_exps.size());
        const int r = s + static_cast<int>(q_exps.size());
        if (r < r_amb) continue;   // G itself needs r_amb generators
        ExponentVector mg_padded(r - r_amb, 0);
        mg_padded.insert(mg_padded.end(), mg.begin(), mg.end());
        ++tested;
        CHECK(abgroups::check_subquotient_bounds(h_exps, mg_padded, s));
        CHECK(abgroups::check_subquotient_bounds_dual(q_exps, mg_padded, s));
    }
    CHECK(tested >= 500);
}
