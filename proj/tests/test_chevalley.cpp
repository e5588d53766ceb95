#include <doctest.h>

#include <twistdef/chevalley.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

TEST_CASE("phi of a one-form is the contraction")
{
    const std::size_t n = 3;
    const DiffForm a = dx(n, {0}, X(n, 1)) + dx(n, {2}, C(n, 3));
    const auto f = phi(a);
    for (const auto &pi : multivector_basis(n, 1, 3)) CHECK(f({pi}) == contract(a, pi));
}

TEST_CASE("phi on the four-dimensional counterexample")
{
    const std::size_t n = 4;
    const PolyVector pi = D(n, {0, 1}) + D(n, {2, 3});
    const auto h = phi(dx(n, {0, 1, 2}));
    CHECK(h({pi, pi, pi}) == D(n, {0, 1, 3}, C(n, 6)));
}

TEST_CASE("structure map is graded symmetric and squares to zero")
{
    const std::size_t n = 3;
    const Cochain m = structure_cochain(n);
    BasisBounds b{.poly_degree = 2, .mv_degree = 3};
    CHECK(graded_symmetry_check(m, b).equal);
    const auto r = cochain_vanishes_on_basis(cochain_bracket(m, m), b);
    CHECK(r.equal);
}

TEST_CASE("differential of phi matches phi of d")
{
    const std::size_t n = 3;
    BasisBounds b{.poly_degree = 2, .mv_degree = 3};
    for (const auto &a : form_basis(n, 2, 0, 2)) {
        const auto lhs = cochain_differential(phi(a));
        const auto rhs = phi(d_form(a), *a.degree() + 1);
        const auto r = cochain_equal_on_basis(lhs, rhs, b);
        CHECK_MESSAGE(r.equal, a.to_string(VarContext::numbered(n)));
        if (!r.equal) break;
    }
}

TEST_CASE("phi images commute")
{
    const std::size_t n = 3;
    BasisBounds b{.poly_degree = 2, .mv_degree = 3};
    const auto forms = form_basis(n, 1, 1, 2);
    for (std::size_t i = 0; i < forms.size(); i += 3)
        for (std::size_t j = i; j < forms.size(); j += 5) {
            const auto r = cochain_vanishes_on_basis(cochain_bracket(phi(forms[i]), phi(forms[j])), b);
            CHECK(r.equal);
            if (!r.equal) return;
        }
}

TEST_CASE("one-form identity for vector fields and its multivector extension")
{
    const std::size_t n = 3;
    const auto fields = multivector_basis(n, 2, 3);
    for (const auto &w : form_basis(n, 2, 1, 1)) {
        const auto dphi = phi(d_form(w), 2);
        for (const auto &p : fields)
            for (const auto &r : fields) {
                if (*p.degree() == 0 || *r.degree() == 0) continue;
                const int s = (*p.degree() - 1) & 1;
                PolyVector lhs = contract(w, schouten(p, r)) - schouten(contract(w, p), r);
                PolyVector tail = schouten(p, contract(w, r));
                PolyVector rhs = dphi({p, r});
                if (s) {
                    lhs += tail;
                    rhs = -rhs;
                } else {
                    lhs -= tail;
                }
                REQUIRE(lhs == rhs);
            }
    }
}
