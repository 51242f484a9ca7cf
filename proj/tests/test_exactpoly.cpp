#include <doctest.h>

#include "avgroups/errors.hpp"
#include "avgroups/exactpoly.hpp"
#include "avgroups/textio.hpp"
#include "support.hpp"

using namespace avgroups;
using exactpoly::IntPolynomial;

TEST_CASE("evaluate sums coefficients at 1") {
    CHECK(exactpoly::evaluate(IntPolynomial{2, -1, 1}, 1) == 2);
    CHECK(exactpoly::evaluate(IntPolynomial{16, 32, 24, 8, 1}, 1) == 81);
    CHECK(exactpoly::evaluate(IntPolynomial{9, 0, 0, 0, 1}, 1) == 10);
    CHECK(exactpoly::evaluate(IntPolynomial{9, 0, 0, 0, 1}, -2) == 25);
}

TEST_CASE("reflect_at_one matches hand expansions") {
    CHECK(exactpoly::reflect_at_one(IntPolynomial{2, -1, 1}) == IntPolynomial{2, -1, 1});
    CHECK(exactpoly::reflect_at_one(IntPolynomial{-2, 1}) == IntPolynomial{-1, -1});
    CHECK(exactpoly::reflect_at_one(IntPolynomial{16, 32, 24, 8, 1}) ==
          IntPolynomial{81, -108, 54, -12, 1});
}

TEST_CASE("reflect_at_one is an involution and matches evaluate at 0/1") {
    auto g = testsupport::rng(20240801);
    for (int i = 0; i < 600; ++i) {
        IntPolynomial f = testsupport::random_polynomial(g, 8, 99);
        IntPolynomial r = exactpoly::reflect_at_one(f);
        CHECK(exactpoly::reflect_at_one(r) == f);
        CHECK(exactpoly::evaluate(r, 0) == exactpoly::evaluate(f, 1));
    }
}

TEST_CASE("squarefree decomposition of the worked examples") {
    IntPolynomial f = IntPolynomial{4, -1, 1} * IntPolynomial{-2, 1} * IntPolynomial{-2, 1};
    auto parts = exactpoly::squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == IntPolynomial{4, -1, 1});
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == IntPolynomial{-2, 1});
    CHECK(parts[1].second == 2);

    auto sep = exactpoly::squarefree_decomposition(IntPolynomial{9, 0, 0, 0, 1});
    REQUIRE(sep.size() == 1);
    CHECK(sep[0].first == IntPolynomial{9, 0, 0, 0, 1});
    CHECK(sep[0].second == 1);

    auto pure = exactpoly::squarefree_decomposition(IntPolynomial{16, 32, 24, 8, 1});
    REQUIRE(pure.size() == 1);
    CHECK(pure[0].first == IntPolynomial{2, 1});
    CHECK(pure[0].second == 4);
}

TEST_CASE("squarefree decomposition rejects non-monic input") {
    CHECK_THROWS_AS(exactpoly::squarefree_decomposition(IntPolynomial{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("squarefree decomposition reconstructs random monic products") {
    auto g = testsupport::rng(20240802);
    for (int i = 0; i < 500; ++i) {
        // build from random monic factors with random multiplicities
        IntPolynomial f = IntPolynomial::constant(1);
        int nfac = testsupport::uniform(g, 1, 3);
        for (int j = 0; j < nfac; ++j) {
            IntPolynomial base = testsupport::random_polynomial(g, 2, 6, true);
            int mult = testsupport::uniform(g, 1, 3);
            for (int k = 0; k < mult; ++k) f = f * base;
        }
        auto parts = exactpoly::squarefree_decomposition(f);
        IntPolynomial back = IntPolynomial::constant(1);
        for (const auto& [p, e] : parts) {
            CHECK(p.is_monic());
            for (int k = 0; k < e; ++k) back = back * p;
        }
        CHECK(back == f);
        for (std::size_t a = 0; a < parts.size(); ++a) {
            CHECK(exactpoly::gcd(parts[a].first, parts[a].first.derivative()).degree() == 0);
            for (std::size_t b = a + 1; b < parts.size(); ++b)
                CHECK(exactpoly::gcd(parts[a].first, parts[b].first).degree() == 0);
        }
    }
}

TEST_CASE("gcd and exact division behave on random products") {
    auto g = testsupport::rng(20240803);
    for (int i = 0; i < 500; ++i) {
        IntPolynomial a = testsupport::random_polynomial(g, 4, 9);
        IntPolynomial b = testsupport::random_polynomial(g, 4, 9, true);
        IntPolynomial prod = a * b;
        CHECK(exactpoly::divides(b, prod));
        CHECK(exactpoly::divide_exact(prod, b) == a);
        IntPolynomial d = exactpoly::gcd(prod, b);
        CHECK(exactpoly::divides(d, prod));
        CHECK(exactpoly::divides(d, b));
    }
}

TEST_CASE("polynomial text round trip") {
    auto f = textio::parse_polynomial("2,-1,1");
    CHECK(f == IntPolynomial{2, -1, 1});
    CHECK(textio::polynomial_to_string(f) == "2,-1,1");
    CHECK(textio::parse_polynomial(" +2 , -1 , 1 ") == f);
    CHECK(textio::parse_polynomial("2,-1,1,0") == f);
    CHECK_THROWS_AS(textio::parse_polynomial("2,,1"), parse_error);
    CHECK_THROWS_AS(textio::parse_polynomial("2,x,1"), parse_error);
    try {
        textio::parse_polynomial("2,x,1");
    } catch (const parse_error& e) {
        CHECK(e.position() == 2);
    }
}
