#ifndef TWISTDEF_SUITES_HPP
#define TWISTDEF_SUITES_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace twistdef {

struct CaseResult {
    std::string name;
    bool passed = true;
    /// Number of individual equalities evaluated.
    std::size_t checks = 0;
    /// Free-form note (witness, counts); deterministic for fixed bounds.
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool passed = true;
    std::vector<CaseResult> cases;

    void add(CaseResult c)
    {
        passed = passed && c.passed;
        cases.push_back(std::move(c));
    }
};

struct SchoutenSuiteBounds {
    std::size_t max_vars = 4;
    unsigned poly_degree = 2;
    int mv_degree = 3;
};
/// Graded antisymmetry, graded Jacobi and the wedge Leibniz rule over every
/// ordered tuple of basis elements, for each n in 0..max_vars.
SuiteResult schouten_suite(const SchoutenSuiteBounds &b = {});

struct LemmaSuiteBounds {
    std::size_t max_vars = 4;
    unsigned form_degree = 2;
    int max_form_rank = 3;
    unsigned poly_degree = 2;
    int mv_degree = 3;
    /// For n >= this, the bracket check runs over form pairs whose coefficient
    /// degrees add up to at most pair_degree_cap (both cochains are linear
    /// over functions, so constant forms already determine the bracket).
    std::size_t pair_cap_from_vars = 4;
    unsigned pair_degree_cap = 1;
};
SuiteResult lemma_suite(const LemmaSuiteBounds &b = {});

/// H = dx1^dx2^dx3 passes all three relations, H' = x4 dx1^dx2^dx3 fails [l2,l3].
SuiteResult linfty_suite();

struct HochSuiteBounds {
    std::size_t max_vars = 3;
    int max_arity = 3;
    unsigned op_order = 2;
    unsigned poly_degree = 2;
    /// Reduced bounds for the two- and three-cochain identities.
    unsigned pair_poly_degree = 2;
    unsigned pair_op_order = 2;
    int jacobi_max_arity = 2;
    unsigned jacobi_op_order = 1;
    unsigned jacobi_poly_degree = 1;
    std::size_t jacobi_max_vars = 2;
};
SuiteResult hochschild_suite(const HochSuiteBounds &b = {});

/// Graded Jacobi for the Gerstenhaber bracket over every multiset of three
/// basis cochains with n <= max_vars, arity <= max_arity, slot order <=
/// op_order and coefficient degree <= poly_degree. Stops once `seconds` have
/// elapsed; the case then fails and its detail says how far it got.
CaseResult gerstenhaber_jacobi_budgeted(std::size_t max_vars, int max_arity, unsigned op_order, unsigned poly_degree, double seconds);

struct FormalitySuiteBounds {
    std::size_t max_vars = 2;
    unsigned poly_degree = 1;
    int mv_degree = 2;
    unsigned primitive_poly_degree = 2;
    unsigned primitive_op_order = 2;
};
/// [hkr p, hkr q] - hkr [p, q] is d-exact within bounds for all basis pairs,
/// and hkr(D1^D2) is not.
SuiteResult formality_suite(const FormalitySuiteBounds &b = {});

struct DeformSuiteBounds {
    int random_cases = 20;
    int truncation = 3;
    unsigned seed = 20261016;
};
SuiteResult deform_suite(const DeformSuiteBounds &b = {});

/// The three twisted Poisson oracle instances.
SuiteResult twisted_suite();

} // namespace twistdef

#endif
