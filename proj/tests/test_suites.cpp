#include <doctest.h>

#include <twistdef/suites.hpp>

using namespace twistdef;

namespace {

void require_all(const SuiteResult &r)
{
    for (const auto &c : r.cases) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
        CHECK(c.checks > 0);
    }
    CHECK(r.passed);
}

} // namespace

TEST_CASE("suites pass at small bounds")
{
    require_all(schouten_suite({.max_vars = 3, .poly_degree = 1, .mv_degree = 3}));
    require_all(lemma_suite({.max_vars = 3, .form_degree = 1, .max_form_rank = 3, .poly_degree = 1, .mv_degree = 3}));
    HochSuiteBounds h;
    h.max_vars = 2;
    h.poly_degree = 1;
    h.pair_poly_degree = 1;
    h.jacobi_max_arity = 1;
    require_all(hochschild_suite(h));
    require_all(formality_suite({.max_vars = 1}));
    require_all(deform_suite({.random_cases = 4}));
    require_all(twisted_suite());
}

TEST_CASE("the L-infinity dichotomy reports a witness")
{
    const auto r = linfty_suite();
    REQUIRE(r.cases.size() == 2);
    CHECK(r.passed);
    CHECK(r.cases[1].detail.find("witness") == 0);
}
