#include <doctest.h>

#include <twistdef/errors.hpp>
#include <twistdef/multivector.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

namespace {

int deg(const PolyVector &v)
{
    return *v.degree();
}

} // namespace

TEST_CASE("wedge of multivectors")
{
    const std::size_t n = 2;
    CHECK(wedge(D(n, {0}), D(n, {0})).is_zero());
    CHECK(wedge(D(n, {1}), D(n, {0})) == -D(n, {0, 1}));
    CHECK(wedge(D(n, {0}, X(n, 0)), D(n, {1}, X(n, 1))) == D(n, {0, 1}, mono(n, {1, 1})));
    CHECK(wedge(PolyVector::scalar(X(n, 0)), D(n, {1})) == D(n, {1}, X(n, 0)));
}

TEST_CASE("schouten examples")
{
    const std::size_t n = 2;
    CHECK(schouten(D(n, {0}), PolyVector::scalar(mono(n, {2, 0}))) == PolyVector::scalar(mono(n, {1, 0}, 2)));
    CHECK(schouten(D(n, {1}, X(n, 0)), D(n, {0}, X(n, 1))) == D(n, {0}, X(n, 0)) - D(n, {1}, X(n, 1)));
    CHECK(schouten(D(n, {0, 1}), D(n, {0, 1})).is_zero());
    CHECK_THROWS_AS(schouten(D(2, {0}), D(3, {0})), ContextMismatch);
}

TEST_CASE("exterior derivative")
{
    const std::size_t n = 3;
    CHECK(d_form(dx(n, {1}, X(n, 0))) == dx(n, {0, 1}));
    CHECK(d_form(d_form(dx(n, {2}, mono(n, {2, 1})))).is_zero());
    CHECK(d_form(DiffForm::scalar(C(n, 4))).is_zero());
    for (const auto &a : form_basis(n, 2, 0, 3)) CHECK(d_form(d_form(a)).is_zero());
}

TEST_CASE("d is a derivation of the wedge product")
{
    const std::size_t n = 3;
    const auto basis = form_basis(n, 1, 0, 2);
    for (const auto &a : basis)
        for (const auto &b : basis) {
            DiffForm rhs = wedge(d_form(a), b);
            const DiffForm tail = wedge(a, d_form(b));
            if (*a.degree() % 2) rhs -= tail;
            else rhs += tail;
            REQUIRE(d_form(wedge(a, b)) == rhs);
        }
}

TEST_CASE("contraction examples and errors")
{
    const std::size_t n = 3;
    CHECK(contract(dx(n, {0}), D(n, {0})) == PolyVector::scalar(C(n, 1)));
    CHECK(contract(dx(n, {2}), D(n, {0, 1})).is_zero());
    CHECK(contract(dx(n, {0}), D(n, {0, 1})) == D(n, {1}));
    CHECK_THROWS_AS(contract(dx(n, {0, 1}), D(n, {0, 1})), DegreeError);
}

TEST_CASE("contraction is a derivation of degree -1")
{
    const std::size_t n = 3;
    const auto basis = multivector_basis(n, 1, 2);
    for (const auto &a : form_basis(n, 1, 1, 1))
        for (const auto &p : basis)
            for (const auto &q : basis) {
                PolyVector rhs = wedge(contract(a, p), q);
                const PolyVector tail = wedge(p, contract(a, q));
                if (deg(p) % 2) rhs -= tail;
                else rhs += tail;
                REQUIRE(contract(a, wedge(p, q)) == rhs);
            }
}

TEST_CASE("i_a on multivectors")
{
    const std::size_t n = 2;
    CHECK(i_func_mv(X(n, 0), PolyVector::scalar(X(n, 1))).is_zero());
    CHECK(i_func_mv(X(n, 0), D(n, {1})).is_zero());
    CHECK(i_func_mv(X(n, 0), D(n, {0, 1})) == -D(n, {1}));
    for (const auto &p : multivector_basis(n, 2, 2)) CHECK(i_func_mv(mono(n, {1, 1}), p) == schouten(p, PolyVector::scalar(mono(n, {1, 1}))));
}

TEST_CASE("a context without variables")
{
    const auto basis = multivector_basis(0, 2, 3);
    REQUIRE(basis.size() == 1);
    CHECK(schouten(basis[0], basis[0]).is_zero());
    CHECK(wedge(basis[0], basis[0]) == basis[0]);
    CHECK(d_form(DiffForm::scalar(C(0, 3))).is_zero());
}

TEST_CASE("degree bookkeeping")
{
    const std::size_t n = 3;
    const PolyVector mixed = D(n, {0}) + D(n, {0, 1});
    CHECK(!mixed.degree().has_value());
    CHECK(mixed.degrees() == std::vector<int>{1, 2});
    CHECK(mixed.component(2) == D(n, {0, 1}));
    CHECK(D(n, {0}, mono(n, {2, 1})).coefficient_degree() == 3);
    CHECK(PolyVector(n).coefficient_degree() == -1);
    CHECK_THROWS(frame_from_indices({1, 0}, n));
    CHECK_THROWS(frame_from_indices({3}, n));
}

TEST_CASE("bases have the expected sizes")
{
    // frames of size <= 3 over 4 indices: 1 + 4 + 6 + 4 = 15; monomials of degree <= 2: 15
    CHECK(multivector_basis(4, 2, 3).size() == 225);
    CHECK(form_basis(3, 1, 1, 1).size() == 12);
}
