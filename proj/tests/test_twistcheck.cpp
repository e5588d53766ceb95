#include <doctest.h>

#include <chrono>

#include <twistdef/twistcheck.hpp>
#include <twistdef/errors.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

TEST_CASE("make_twisted accepts closed and rejects open forms")
{
    CHECK_NOTHROW(make_twisted(dx(3, {0, 1, 2})));
    CHECK(make_twisted(DiffForm(3)).l3.is_zero());
    const DiffForm open = dx(4, {0, 1, 2}, X(4, 3));
    try {
        make_twisted(open);
        FAIL("expected NotClosed");
    } catch (const NotClosed &e) {
        // d(x4 dx1 dx2 dx3) = dx4 dx1 dx2 dx3 = -dx1 dx2 dx3 dx4
        CHECK(e.dH() == dx(4, {0, 1, 2, 3}, C(4, -1)));
    }
    CHECK_THROWS_AS(make_twisted(dx(3, {0, 1})), DegreeError);
}

TEST_CASE("defect examples")
{
    const auto s3 = make_twisted(dx(3, {0, 1, 2}));
    CHECK(mc_defect(s3, D(3, {0, 1})).is_zero());
    CHECK(is_twisted_poisson(s3, D(3, {0, 2}, X(3, 1))));
    CHECK_THROWS_AS(mc_defect(s3, D(3, {0})), DegreeError);

    const auto s4 = make_twisted(dx(4, {0, 1, 2}));
    const PolyVector pi = D(4, {0, 1}) + D(4, {2, 3});
    // [pi,pi] = 0 for constant pi; phi(H)(pi,pi,pi) = 6 D1 D2 D4 by hand.
    CHECK(mc_defect(s4, pi) == D(4, {0, 1, 3}, C(4, -6)));
    CHECK_FALSE(is_twisted_poisson(s4, pi));

    const auto s0 = make_twisted(DiffForm(2));
    CHECK(is_twisted_poisson(s0, D(2, {0, 1}, X(2, 0))));
}

TEST_CASE("defect scales quadratically and cubically")
{
    const auto s = make_twisted(dx(4, {0, 1, 2}));
    const PolyVector pi = D(4, {0, 1}, X(4, 2)) + D(4, {2, 3}) + D(4, {1, 3}, X(4, 0));
    const PolyVector lhs = mc_defect(s, pi * Rational(2));
    const PolyVector rhs = schouten(pi, pi) * Rational(4) - s.l3({pi, pi, pi}) * Rational(8);
    CHECK(lhs == rhs);
}

TEST_CASE("every bivector in two variables is twisted Poisson")
{
    const auto s = make_twisted(DiffForm(2));
    for (const auto &b : multivector_basis(2, 2, 2))
        for (const auto &c : multivector_basis(2, 2, 2))
            if (b.degree() == 2 && c.degree() == 2) CHECK(is_twisted_poisson(s, b + c));
}

TEST_CASE("untwisted case is the classical Poisson condition")
{
    const auto s = make_twisted(DiffForm(3));
    const auto basis = multivector_basis(3, 1, 2);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            if (basis[i].degree() != 2 || basis[j].degree() != 2) continue;
            const PolyVector p = basis[i] + basis[j];
            CHECK(is_twisted_poisson(s, p) == schouten(p, p).is_zero());
        }
}

TEST_CASE("relation dichotomy")
{
    const auto s = make_twisted(dx(4, {0, 1, 2}));
    BasisBounds b{.poly_degree = 2, .mv_degree = 3};
    const auto good = linfty_relations_check(s.l2, s.l3, b);
    CHECK(good.passed);
    for (const auto &r : good.relations) MESSAGE(r.name << " tuples " << r.report.tuples_checked);

    const auto bad = linfty_relations_check(s.l2, phi(dx(4, {0, 1, 2}, X(4, 3))), b);
    CHECK_FALSE(bad.passed);
    CHECK(bad.relations[0].report.equal);
    CHECK_FALSE(bad.relations[1].report.equal);
    CHECK(bad.relations[1].report.witness.has_value());
    CHECK(bad.relations[2].report.equal);
}

TEST_CASE("cohomologous twists both satisfy the relations")
{
    const std::size_t n = 4;
    const DiffForm H = dx(n, {0, 1, 2});
    BasisBounds b{.poly_degree = 2, .mv_degree = 3};
    const auto twos = form_basis(n, 1, 2, 2);
    int used = 0;
    for (std::size_t i = 0; i < twos.size(); ++i) {
        if (d_form(twos[i]).is_zero() || i % 4 != 0) continue;
        ++used;
        const DiffForm H2 = H + d_form(twos[i]);
        const auto s = make_twisted(H2);
        CHECK(linfty_relations_check(s.l2, s.l3, b).passed);
    }
    CHECK(used > 2);
}
