#include <doctest.h>

#include <random>

#include <twistdef/hochschild.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

namespace {

Monomial ord(std::size_t n, std::initializer_list<unsigned> e)
{
    std::vector<unsigned> v(e);
    v.resize(n, 0);
    return Monomial(n, v);
}

// Sample polynomials used to evaluate cochains as an independent oracle.
std::vector<Polynomial> samples(std::size_t n)
{
    std::vector<Polynomial> out;
    out.push_back(C(n, 1));
    for (std::size_t i = 0; i < n; ++i) out.push_back(X(n, i) + C(n, 2));
    out.push_back(mono(n, {2, 1}) - mono(n, {0, 3}, 1, 2) + X(n, 0));
    out.push_back(mono(n, {1, 1, 1}) + mono(n, {3}, 2, 3));
    return out;
}

void for_each_args(const std::vector<Polynomial> &pool, int k, const std::function<void(const std::vector<Polynomial> &)> &fn)
{
    std::vector<Polynomial> args;
    auto rec = [&](auto &&self, int i) -> void {
        if (i == k) {
            fn(args);
            return;
        }
        for (const auto &p : pool) {
            args.push_back(p);
            self(self, i + 1);
            args.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace

TEST_CASE("delta examples")
{
    const std::size_t n = 2;
    CHECK(hoch_delta(MultiDiffOp::identity(n)) == MultiDiffOp::multiplication(n));
    CHECK(hoch_delta(MultiDiffOp::multiplication(n)).is_zero());
    CHECK(hoch_delta(MultiDiffOp::function(X(n, 0))).is_zero());
}

TEST_CASE("delta agrees with the simplicial formula on sample arguments")
{
    const std::size_t n = 3;
    const auto pool = samples(n);
    const std::vector<Polynomial> small(pool.begin(), pool.begin() + 3);
    const MultiDiffOp d = MultiDiffOp::term(X(n, 1), {ord(n, {1, 1}), ord(n, {0, 0, 1})}) +
                          MultiDiffOp::term(C(n, 3), {ord(n, {2}), ord(n, {})});
    const MultiDiffOp dd = hoch_delta(d);
    for_each_args(pool, 3, [&](const std::vector<Polynomial> &a) {
        Polynomial expect = a[0] * d({a[1], a[2]}) - d({a[0] * a[1], a[2]}) + d({a[0], a[1] * a[2]}) - d({a[0], a[1]}) * a[2];
        CHECK(dd(a) == expect);
    });
}

TEST_CASE("brace and cup examples")
{
    const std::size_t n = 2;
    const MultiDiffOp dx_ = MultiDiffOp::derivation(n, 0, C(n, 1));
    const MultiDiffOp dy_ = MultiDiffOp::derivation(n, 1, C(n, 1));
    const MultiDiffOp mu = MultiDiffOp::multiplication(n);
    CHECK(brace(mu, {dx_, dy_}) == cup(dx_, dy_));
    CHECK(brace(dx_, {}) == dx_);
    CHECK_THROWS(brace(dx_, {dx_, dy_}));
    const MultiDiffOp xdx = MultiDiffOp::derivation(n, 0, X(n, 0));
    CHECK(brace(dx_, {xdx}) == MultiDiffOp::term(C(n, 1), {ord(n, {1})}) + MultiDiffOp::term(X(n, 0), {ord(n, {2})}));
    CHECK(gerstenhaber(dx_, xdx) == dx_);
    CHECK(gerstenhaber(xdx, xdx).is_zero());
    CHECK(cup(MultiDiffOp::function(C(n, 1)), dx_) == dx_);
    const auto c = cup(dx_, dy_);
    CHECK(c({mono(n, {2}), mono(n, {1, 1})}) == mono(n, {2, 0}, 2));
}

TEST_CASE("brace agrees with evaluation")
{
    const std::size_t n = 2;
    const auto pool = samples(n);
    const MultiDiffOp d = MultiDiffOp::term(X(n, 0), {ord(n, {1}), ord(n, {0, 1})}) + MultiDiffOp::term(C(n, 1), {ord(n, {}), ord(n, {2})});
    const MultiDiffOp e = MultiDiffOp::term(X(n, 1), {ord(n, {1}), ord(n, {})});
    const MultiDiffOp de = brace(d, {e});
    // slot 0: after = 1, sign (-1)^{1*1}; slot 1: after = 0
    for_each_args(pool, 3, [&](const std::vector<Polynomial> &a) {
        Polynomial expect = d({a[0], e({a[1], a[2]})}) - d({e({a[0], a[1]}), a[2]});
        CHECK(de(a) == expect);
    });
}

TEST_CASE("contraction examples")
{
    const std::size_t n = 2;
    const MultiDiffOp dxdy = MultiDiffOp::term(C(n, 1), {ord(n, {1}), ord(n, {0, 1})});
    CHECK(i_func_hoch(X(n, 0), dxdy) == MultiDiffOp::derivation(n, 1, C(n, 1)));
    CHECK(i_func_hoch(X(n, 0), MultiDiffOp::multiplication(n)).is_zero());
    CHECK(i_func_hoch(X(n, 0), MultiDiffOp::function(X(n, 1))).is_zero());
}

TEST_CASE("hkr examples")
{
    const std::size_t n = 2;
    CHECK(hkr(D(n, {0})) == MultiDiffOp::derivation(n, 0, C(n, 1)));
    const MultiDiffOp expect = MultiDiffOp::term(C(n, 1, 2), {ord(n, {1}), ord(n, {0, 1})}) -
                               MultiDiffOp::term(C(n, 1, 2), {ord(n, {0, 1}), ord(n, {1})});
    CHECK(hkr(D(n, {0, 1})) == expect);
    CHECK(hkr(PolyVector::scalar(X(n, 1))) == MultiDiffOp::function(X(n, 1)));
}

TEST_CASE("sign calibration")
{
    const std::size_t n = 2;
    const MultiDiffOp mu = MultiDiffOp::multiplication(n);
    for (int k = 0; k <= 3; ++k)
        for (const auto &d : hoch_basis(n, k, 1, 2)) {
            REQUIRE(gerstenhaber(mu, d) == hoch_delta(d));
        }
    for (const auto &p : multivector_basis(n, 2, 2)) {
        const int s = (*p.degree() - 1) & 1;
        const MultiDiffOp lhs = hkr(i_func_mv(X(n, 0) + mono(n, {1, 1}), p));
        const MultiDiffOp rhs = i_func_hoch(X(n, 0) + mono(n, {1, 1}), hkr(p));
        CHECK(lhs == (s ? -rhs : rhs));
    }
}

TEST_CASE("gerstenhaber of hkr images with functions and vector fields")
{
    const std::size_t n = 2;
    const auto basis = multivector_basis(n, 1, 2);
    for (const auto &p : basis)
        for (const auto &q : basis) {
            const MultiDiffOp diff = gerstenhaber(hkr(p), hkr(q)) - hkr(schouten(p, q));
            const auto r = delta_primitive(diff, {2, 2});
            CHECK_MESSAGE(r.found, p.to_string(VarContext::numbered(n)) << " , " << q.to_string(VarContext::numbered(n)));
        }
}

TEST_CASE("delta_primitive")
{
    const std::size_t n = 2;
    CHECK(delta_primitive(MultiDiffOp(n, 2)).found);
    const MultiDiffOp xi0 = MultiDiffOp::term(X(n, 0), {ord(n, {1}), ord(n, {0, 1})}) + MultiDiffOp::term(C(n, 2), {ord(n, {2}), ord(n, {})});
    const auto r = delta_primitive(hoch_delta(xi0), {2, 2});
    REQUIRE(r.found);
    CHECK(hoch_delta(*r.primitive) == hoch_delta(xi0));
    const auto none = delta_primitive(hkr(D(n, {0, 1})), {2, 2});
    CHECK_FALSE(none.found);
    CHECK(none.augmented_rank == none.rank + 1);
}
