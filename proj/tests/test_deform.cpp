#include <doctest.h>

#include <random>

#include <twistdef/deform.hpp>
#include <twistdef/errors.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

namespace {

ArtinSeries series(std::size_t n, int N, std::initializer_list<std::pair<int, PolyVector>> c)
{
    ArtinSeries s(n, ArtinRing(N));
    for (const auto &[k, v] : c) s.set(k, v);
    return s;
}

PolyVector random_element(std::mt19937 &rng, std::size_t n, unsigned deg, int mv, int terms)
{
    std::vector<PolyVector> basis;
    for (auto &b : multivector_basis(n, deg, mv))
        if (b.degree() == mv) basis.push_back(std::move(b));
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    PolyVector v(n);
    for (int t = 0; t < terms; ++t) v += basis[pick(rng)] * Rational(coef(rng));
    return v;
}

} // namespace

TEST_CASE("series bookkeeping")
{
    CHECK_THROWS(ArtinRing(0));
    ArtinSeries s(2, ArtinRing(3));
    CHECK_THROWS_AS(s.set(0, D(2, {0, 1})), IndexError);
    CHECK_THROWS_AS(s.set(4, D(2, {0, 1})), IndexError);
    GaugeParam xi(2, ArtinRing(3));
    CHECK_THROWS_AS(xi.set(1, D(2, {0, 1})), DegreeError);
}

TEST_CASE("defect series examples")
{
    const auto flat = make_twisted(DiffForm(2));
    CHECK(defect_vanishes(defect_series(flat, series(2, 4, {{1, D(2, {0, 1})}}))));

    const auto plane = make_twisted(DiffForm(2));
    const auto s = series(2, 3, {{1, D(2, {0, 1}, X(2, 0))}, {2, D(2, {0, 1}, mono(2, {2, 1}))}});
    CHECK(defect_vanishes(defect_series(plane, s)));

    const auto tw = make_twisted(dx(4, {0, 1, 2}));
    const PolyVector pi = D(4, {0, 1}) + D(4, {2, 3});
    const auto d = defect_series(tw, series(4, 3, {{1, pi}}));
    CHECK(d.at(1).is_zero());
    CHECK(d.at(2).is_zero());
    CHECK(d.at(3) == -tw.l3({pi, pi, pi}));
    CHECK_FALSE(d.at(3).is_zero());
}

TEST_CASE("mc_solve examples")
{
    const auto flat = make_twisted(DiffForm(2));
    const auto a = mc_solve(flat, D(2, {0, 1}), 4, 2);
    CHECK(a.status == SolveStatus::Solved);
    for (int k = 2; k <= 4; ++k) CHECK(a.solution.coeff(k).is_zero());

    const auto tw = make_twisted(dx(4, {0, 1, 2}));
    const PolyVector pi = D(4, {0, 1}) + D(4, {2, 3});
    const auto b = mc_solve(tw, pi, 2, 1);
    REQUIRE(b.status == SolveStatus::Solved);
    CHECK(schouten(pi, b.solution.coeff(2)) * Rational(2) == tw.l3({pi, pi, pi}));
    MESSAGE("pi2 = " << b.solution.coeff(2).to_string(VarContext::numbered(4)));

    const auto c = mc_solve(tw, pi, 2, 0);
    CHECK(c.status == SolveStatus::Obstructed);
    CHECK(c.obstructed_order == 3);
    CHECK(c.residual == -tw.l3({pi, pi, pi}));

    // N = 1 never obstructs, even for a non-Poisson bivector.
    const auto s3 = make_twisted(DiffForm(3));
    const PolyVector bad = D(3, {1, 2}, X(3, 2)) - D(3, {0, 2}, X(3, 0));
    CHECK_FALSE(schouten(bad, bad).is_zero());
    CHECK(mc_solve(s3, bad, 1, 0).status == SolveStatus::Solved);
    const auto d = mc_solve(s3, bad, 2, 1);
    CHECK(d.status == SolveStatus::Obstructed);
    CHECK(d.obstructed_order == 2);
}

TEST_CASE("gauge_flow examples")
{
    const auto flat = make_twisted(DiffForm(2));
    const auto g = series(2, 3, {{1, D(2, {0, 1})}});
    CHECK(gauge_flow(flat, g, GaugeParam(2, ArtinRing(3))) == g);

    GaugeParam xi(2, ArtinRing(3));
    xi.set(1, D(2, {0}, X(2, 0)));
    CHECK(gauge_flow(flat, ArtinSeries(2, ArtinRing(3)), xi) == ArtinSeries(2, ArtinRing(3)));
    const auto out = gauge_flow(flat, g, xi);
    CHECK(out.coeff(1) == g.coeff(1));
    CHECK(out.coeff(2) == -schouten(xi.coeff(1), g.coeff(1)));
}

TEST_CASE("gauge flow preserves solutions of the twisted equation")
{
    std::mt19937 rng(20261016);
    const auto tw = make_twisted(dx(4, {0, 1, 2}));
    int checked = 0;
    for (int attempt = 0; attempt < 40 && checked < 6; ++attempt) {
        const PolyVector pi1 = random_element(rng, 4, 0, 2, 3);
        const auto sol = mc_solve(tw, pi1, 3, 1);
        if (sol.status != SolveStatus::Solved) continue;
        GaugeParam xi(4, ArtinRing(3));
        for (int k = 1; k <= 3; ++k) xi.set(k, random_element(rng, 4, 2, 1, 2));
        const auto moved = gauge_flow(tw, sol.solution, xi);
        CHECK(defect_vanishes(defect_series(tw, moved)));
        ++checked;
    }
    CHECK(checked == 6);
}

TEST_CASE("gauge_equivalent")
{
    const auto flat = make_twisted(DiffForm(2));
    const auto g = series(2, 3, {{1, D(2, {0, 1})}});
    const auto same = gauge_equivalent(flat, g, g, 1);
    CHECK(same.equivalent);

    const auto twice = series(2, 3, {{1, D(2, {0, 1}, C(2, 2))}});
    const auto r = gauge_equivalent(flat, g, twice, 2);
    CHECK_FALSE(r.equivalent);
    CHECK(r.failed_order == 1);

    std::mt19937 rng(7);
    const auto tw = make_twisted(dx(4, {0, 1, 2}));
    const PolyVector pi = D(4, {0, 1}) + D(4, {2, 3});
    const auto sol = mc_solve(tw, pi, 3, 2);
    REQUIRE(sol.status == SolveStatus::Solved);
    GaugeParam xi(4, ArtinRing(3));
    xi.set(1, random_element(rng, 4, 1, 1, 2));
    xi.set(2, random_element(rng, 4, 1, 1, 2));
    const auto moved = gauge_flow(tw, sol.solution, xi);
    const auto back = gauge_equivalent(tw, sol.solution, moved, 1);
    CHECK(back.equivalent);

    const auto bad = series(4, 3, {{1, pi}});
    CHECK_THROWS_AS(gauge_equivalent(tw, bad, bad, 1), NotMaurerCartan);
}

TEST_CASE("gauge_equivalent recovers random gauge parameters")
{
    std::mt19937 rng(11);
    const auto flat = make_twisted(DiffForm(3));
    int found = 0;
    for (int trial = 0; trial < 8; ++trial) {
        const int N = 3 + trial % 2;
        ArtinSeries g(3, ArtinRing(N));
        g.set(1, D(3, {0, 1}, X(3, 2)) + D(3, {1, 2}) * Rational(trial % 3));
        REQUIRE(defect_vanishes(defect_series(flat, g)));
        GaugeParam xi(3, ArtinRing(N));
        for (int k = 1; k <= N; ++k) xi.set(k, random_element(rng, 3, 1, 1, 2));
        const auto moved = gauge_flow(flat, g, xi);
        const auto r = gauge_equivalent(flat, g, moved, 1);
        CHECK(r.equivalent);
        found += r.equivalent;
    }
    CHECK(found == 8);
}
