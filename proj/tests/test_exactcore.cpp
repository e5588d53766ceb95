#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <twistdef/errors.hpp>
#include <twistdef/koszul.hpp>
#include <twistdef/polynomial.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

TEST_CASE("rationals stay reduced with a positive denominator")
{
    CHECK(Rational(6, -4).to_string() == "-3/2");
    CHECK(Rational(0, -7).to_string() == "0");
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(4, 2).to_string() == "2");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("rational arithmetic crosses into big integers and back")
{
    Rational big(1);
    for (int i = 0; i < 5; ++i) big *= Rational(1'000'000'007);
    CHECK(big.to_string() == "1000000035000000490000003430000012005000016807");
    Rational back = big;
    for (int i = 0; i < 5; ++i) back /= Rational(1'000'000'007);
    CHECK(back.is_one());
    const Rational huge = Rational::parse("123456789012345678901234567890/987654321098765432109876543210");
    CHECK(huge.to_string() == "13717421/109739369");
    CHECK(Rational(INT64_MAX) + Rational(1) == Rational::parse("9223372036854775808"));
    CHECK(Rational(INT64_MIN) - Rational(1) == Rational::parse("-9223372036854775809"));
    CHECK(-Rational(INT64_MIN) == Rational::parse("9223372036854775808"));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::parse("-100000000000000000000") < Rational(-5));
}

TEST_CASE("poly_arith examples")
{
    const std::size_t n = 2;
    const Polynomial x = X(n, 0), y = X(n, 1);
    CHECK(poly_arith(PolyOp::mul, x + y, x) == mono(n, {2, 0}) + mono(n, {1, 1}));
    CHECK(poly_arith(PolyOp::mul, Polynomial(n), x + y).is_zero());
    CHECK(poly_arith(PolyOp::mul, x * Rational(1, 2), y * Rational(2, 3)) == mono(n, {1, 1}, 1, 3));
    CHECK(poly_arith(PolyOp::scale, x + y, Rational(0)).is_zero());
    CHECK(poly_arith(PolyOp::add, x, -x).terms().empty());
    CHECK_THROWS_AS(poly_arith(PolyOp::add, x, X(3, 0)), ContextMismatch);
}

TEST_CASE("terms are ordered by degree, then by exponents from the first variable")
{
    const std::size_t n = 2;
    const Polynomial p = mono(n, {0, 2}) + mono(n, {2, 0}) + mono(n, {1, 1}) + C(n, 5) + X(n, 1);
    std::vector<std::vector<unsigned>> seen;
    for (const auto &[m, c] : p.terms()) seen.push_back(m.exponents());
    const std::vector<std::vector<unsigned>> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    // x1 is absent, so drop it from the expected list
    std::vector<std::vector<unsigned>> expected;
    for (const auto &e : want)
        if (e != std::vector<unsigned>{1, 0}) expected.push_back(e);
    CHECK(seen == expected);
}

TEST_CASE("polynomial ring axioms on random inputs")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-5, 5), e(0, 2);
    const std::size_t n = 3;
    auto random_poly = [&] {
        Polynomial p(n);
        for (int t = 0; t < 5; ++t) {
            std::vector<unsigned> ex{unsigned(e(rng)), unsigned(e(rng)), unsigned(e(rng))};
            p += Polynomial(Monomial(n, ex), Rational(c(rng), 1 + std::abs(c(rng))));
        }
        return p;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Polynomial p = random_poly(), q = random_poly(), r = random_poly();
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        for (const auto &[m, coef] : (p * q).terms()) CHECK(!coef.is_zero());
    }
}

TEST_CASE("partial_derive examples and errors")
{
    const std::size_t n = 2;
    CHECK(partial_derive(mono(n, {2, 1}), 0) == mono(n, {1, 1}, 2));
    CHECK(partial_derive(X(n, 0), 1).is_zero());
    CHECK(partial_derive(mono(n, {3, 0}, 1, 3), 0) == mono(n, {2, 0}));
    CHECK_THROWS_AS(partial_derive(X(n, 0), 2), IndexError);
}

TEST_CASE("partial_derive obeys the Leibniz rule on monomial pairs up to degree 3")
{
    const std::size_t n = 3;
    const auto ms = monomials_up_to(n, 3);
    for (const auto &a : ms)
        for (const auto &b : ms) {
            const Polynomial p(a, Rational(2)), q(b, Rational(-1, 3));
            for (std::size_t i = 0; i < n; ++i)
                REQUIRE(partial_derive(p * q, i) == partial_derive(p, i) * q + p * partial_derive(q, i));
        }
}

TEST_CASE("koszul_sign examples")
{
    const std::vector<std::size_t> swap{1, 0}, id{0, 1, 2};
    CHECK(koszul_sign(std::vector<int>{1, 1}, swap) == -1);
    CHECK(koszul_sign(std::vector<int>{1, 2}, swap) == 1);
    CHECK(koszul_sign(std::vector<int>{3, 5, 7}, id) == 1);
    CHECK_THROWS(koszul_sign(std::vector<int>{1, 1, 1}, swap));
}

TEST_CASE("koszul_sign is multiplicative under composition")
{
    for (std::size_t k = 1; k <= 4; ++k) {
        std::vector<std::size_t> s(k);
        std::iota(s.begin(), s.end(), 0);
        std::vector<std::vector<std::size_t>> perms;
        do perms.push_back(s);
        while (std::next_permutation(s.begin(), s.end()));
        // every parity pattern of the degrees
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            std::vector<int> deg(k);
            for (std::size_t i = 0; i < k; ++i) deg[i] = (mask >> i) & 1 ? 3 : 2;
            for (const auto &sigma : perms)
                for (const auto &tau : perms) {
                    // The permuted list (v_{sigma(0)}, ..) has degrees deg o sigma;
                    // permuting it by tau gives v_{sigma(tau(i))}.
                    std::vector<int> mid(k);
                    std::vector<std::size_t> comp(k);
                    for (std::size_t i = 0; i < k; ++i) {
                        mid[i] = deg[sigma[i]];
                        comp[i] = sigma[tau[i]];
                    }
                    REQUIRE(koszul_sign(deg, comp) == koszul_sign(deg, sigma) * koszul_sign(mid, tau));
                }
        }
    }
}

TEST_CASE("permutation and unshuffle signs")
{
    CHECK(permutation_sign(std::vector<std::size_t>{2, 0, 1}) == 1);
    CHECK(permutation_sign(std::vector<std::size_t>{1, 0, 2}) == -1);
    // moving position 2 (odd) ahead of positions 0 (odd) and 1 (even): one odd crossing
    CHECK(unshuffle_sign(std::vector<int>{1, 0, 1}, std::vector<std::size_t>{2}) == -1);
    CHECK(unshuffle_sign(std::vector<int>{1, 0, 1}, std::vector<std::size_t>{0, 1}) == 1);
}

TEST_CASE("variable contexts")
{
    const VarContext c = VarContext::numbered(3);
    CHECK(c.name(2) == "x3");
    CHECK(VarContext::numbered(0).size() == 0);
    CHECK_THROWS(VarContext({"x", "x"}));
    CHECK(Polynomial::constant(0, Rational(5)).to_string(VarContext{}) == "5");
}
