#include <twistdef/suites.hpp>

#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

#include <twistdef/deform.hpp>
#include <twistdef/hochschild.hpp>
#include <twistdef/twistcheck.hpp>

namespace twistdef {

namespace {

std::string join_tuple(const std::vector<PolyVector> &t, const VarContext &ctx)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += t[i].to_string(ctx);
    }
    return s + ")";
}

std::string witness_text(const EqualityReport &r, const VarContext &ctx)
{
    if (!r.witness) return {};
    return "witness " + join_tuple(r.witness->tuple, ctx) + ": " + r.witness->lhs.to_string(ctx) + " vs " +
           r.witness->rhs.to_string(ctx);
}

std::string nsuffix(std::size_t n)
{
    return " (n=" + std::to_string(n) + ")";
}

int deg(const PolyVector &v)
{
    return *v.degree();
}

bool odd(int e)
{
    return (e & 1) != 0;
}

} // namespace

SuiteResult schouten_suite(const SchoutenSuiteBounds &b)
{
    SuiteResult out{"schouten", true, {}};
    for (std::size_t n = 0; n <= b.max_vars; ++n) {
        const VarContext ctx = VarContext::numbered(n);
        const auto basis = multivector_basis(n, b.poly_degree, b.mv_degree);
        const std::size_t N = basis.size();
        std::vector<int> d(N);
        for (std::size_t i = 0; i < N; ++i) d[i] = deg(basis[i]);
        std::vector<PolyVector> br(N * N), wd(N * N);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                br[i * N + j] = schouten(basis[i], basis[j]);
                wd[i * N + j] = wedge(basis[i], basis[j]);
            }
        const int nn = static_cast<int>(n);

        CaseResult anti{"graded antisymmetry" + nsuffix(n), true, 0, {}};
        for (std::size_t i = 0; i < N && anti.passed; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                ++anti.checks;
                PolyVector other = br[j * N + i];
                if (!odd((d[i] - 1) * (d[j] - 1))) other = -other;
                if (!(br[i * N + j] == other)) {
                    anti.passed = false;
                    anti.detail = "fails on " + join_tuple({basis[i], basis[j]}, ctx);
                    break;
                }
            }
        out.add(anti);

        CaseResult jac{"graded Jacobi" + nsuffix(n), true, 0, {}};
        for (std::size_t i = 0; i < N && jac.passed; ++i)
            for (std::size_t j = 0; j < N && jac.passed; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    if (d[i] + d[j] + d[k] - 2 > nn) continue;
                    ++jac.checks;
                    PolyVector s = schouten(br[i * N + j], basis[k]);
                    if (odd((d[i] - 1) * (d[k] - 1))) s = -s;
                    PolyVector t = schouten(br[j * N + k], basis[i]);
                    if (odd((d[j] - 1) * (d[i] - 1))) t = -t;
                    PolyVector u = schouten(br[k * N + i], basis[j]);
                    if (odd((d[k] - 1) * (d[j] - 1))) u = -u;
                    s += t;
                    s += u;
                    if (!s.is_zero()) {
                        jac.passed = false;
                        jac.detail = "fails on " + join_tuple({basis[i], basis[j], basis[k]}, ctx);
                        break;
                    }
                }
        out.add(jac);

        CaseResult leib{"wedge Leibniz rule" + nsuffix(n), true, 0, {}};
        for (std::size_t i = 0; i < N && leib.passed; ++i)
            for (std::size_t j = 0; j < N && leib.passed; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    if (d[i] + d[j] + d[k] - 1 > nn) continue;
                    ++leib.checks;
                    const PolyVector lhs = schouten(basis[i], wd[j * N + k]);
                    PolyVector rhs = wedge(br[i * N + j], basis[k]);
                    const PolyVector tail = wedge(basis[j], br[i * N + k]);
                    if (odd((d[i] - 1) * d[j])) rhs -= tail;
                    else rhs += tail;
                    if (!(lhs == rhs)) {
                        leib.passed = false;
                        leib.detail = "fails on " + join_tuple({basis[i], basis[j], basis[k]}, ctx);
                        break;
                    }
                }
        out.add(leib);
    }
    return out;
}

SuiteResult lemma_suite(const LemmaSuiteBounds &b)
{
    SuiteResult out{"lemma", true, {}};
    BasisBounds bounds;
    bounds.poly_degree = b.poly_degree;
    bounds.mv_degree = b.mv_degree;
    for (std::size_t n = 2; n <= b.max_vars; ++n) {
        const VarContext ctx = VarContext::numbered(n);
        const int top = std::min(b.max_form_rank, static_cast<int>(n));
        const auto forms = form_basis(n, b.form_degree, 0, top);

        CaseResult dphi{"d phi(a) = phi(da)" + nsuffix(n), true, 0, {}};
        for (const auto &a : forms) {
            const int k = *a.degree();
            const auto r = cochain_equal_on_basis(cochain_differential(phi(a)), phi(d_form(a), k + 1), bounds);
            dphi.checks += r.tuples_checked;
            if (!r.equal) {
                dphi.passed = false;
                dphi.detail = "form " + a.to_string(ctx) + " " + witness_text(r, ctx);
                break;
            }
        }
        dphi.detail = dphi.passed ? std::to_string(forms.size()) + " forms" : dphi.detail;
        out.add(dphi);

        CaseResult comm{"[phi(a), phi(b)] = 0" + nsuffix(n), true, 0, {}};
        std::size_t pairs = 0;
        const bool capped = n >= b.pair_cap_from_vars;
        for (std::size_t i = 0; i < forms.size() && comm.passed; ++i)
            for (std::size_t j = i; j < forms.size(); ++j) {
                if (capped && static_cast<unsigned>(forms[i].coefficient_degree() + forms[j].coefficient_degree()) > b.pair_degree_cap)
                    continue;
                ++pairs;
                const auto r = cochain_vanishes_on_basis(cochain_bracket(phi(forms[i]), phi(forms[j])), bounds);
                comm.checks += r.tuples_checked;
                if (!r.equal) {
                    comm.passed = false;
                    comm.detail = "forms " + forms[i].to_string(ctx) + ", " + forms[j].to_string(ctx) + " " + witness_text(r, ctx);
                    break;
                }
            }
        if (comm.passed) comm.detail = std::to_string(pairs) + " form pairs" + (capped ? " (coefficient degrees summed <= " + std::to_string(b.pair_degree_cap) + ")" : "");
        out.add(comm);

        CaseResult pxy{"one-form identity on vector fields" + nsuffix(n), true, 0, {}};
        std::vector<PolyVector> fields;
        for (auto &v : multivector_basis(n, b.poly_degree, 1))
            if (deg(v) == 1) fields.push_back(std::move(v));
        for (const auto &w : form_basis(n, b.form_degree, 1, 1)) {
            const auto pd = phi(d_form(w), 2);
            for (const auto &x : fields) {
                const PolyVector wx = contract(w, x);
                for (const auto &y : fields) {
                    ++pxy.checks;
                    const PolyVector lhs = contract(w, schouten(x, y)) - schouten(wx, y) - schouten(x, contract(w, y));
                    if (!(lhs == pd({x, y}))) {
                        pxy.passed = false;
                        pxy.detail = "fails for " + w.to_string(ctx) + " on " + join_tuple({x, y}, ctx);
                        break;
                    }
                }
                if (!pxy.passed) break;
            }
            if (!pxy.passed) break;
        }
        out.add(pxy);
    }
    return out;
}

SuiteResult linfty_suite()
{
    SuiteResult out{"linfty", true, {}};
    const std::size_t n = 4;
    const VarContext ctx = VarContext::numbered(n);
    BasisBounds bounds;
    DiffForm H = DiffForm::monomial(n, frame_from_indices({0, 1, 2}, n), Polynomial::constant(n, 1));
    const auto s = make_twisted(H);
    const auto good = linfty_relations_check(s.l2, s.l3, bounds);
    CaseResult c1{"closed H: all relations hold", good.passed, 0, {}};
    for (const auto &r : good.relations) {
        c1.checks += r.report.tuples_checked;
        if (!r.report.equal) c1.detail += r.name + " " + witness_text(r.report, ctx) + "; ";
    }
    out.add(c1);

    const DiffForm Hbad = DiffForm::monomial(n, frame_from_indices({0, 1, 2}, n), Polynomial::variable(n, 3));
    const auto bad = linfty_relations_check(s.l2, phi(Hbad), bounds);
    CaseResult c2{"non-closed H': [l2,l3] fails with a witness", true, 0, {}};
    for (const auto &r : bad.relations) c2.checks += r.report.tuples_checked;
    const auto &mixed = bad.relations[1].report;
    c2.passed = bad.relations[0].report.equal && !mixed.equal && mixed.witness.has_value();
    c2.detail = witness_text(mixed, ctx);
    out.add(c2);
    return out;
}

namespace {

std::vector<MultiDiffOp> hoch_pool(std::size_t n, int max_arity, unsigned poly, unsigned order)
{
    std::vector<MultiDiffOp> pool;
    for (int k = 0; k <= max_arity; ++k)
        for (auto &d : hoch_basis(n, k, poly, order)) pool.push_back(std::move(d));
    return pool;
}

CaseResult hoch_case(const std::string &name) { return CaseResult{name, true, 0, {}}; }

// Zero operators compare equal whatever arity they were built with; i_a of
// a 0-cochain is one of these.
bool same(const MultiDiffOp &a, const MultiDiffOp &b)
{
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.arity() == b.arity() && a == b;
}

MultiDiffOp plus(const MultiDiffOp &a, const MultiDiffOp &b, bool negate_b)
{
    if (b.is_zero()) return a;
    const MultiDiffOp nb = negate_b ? -b : b;
    if (a.is_zero()) return nb;
    return a + nb;
}

void fail(CaseResult &c, const std::string &what)
{
    c.passed = false;
    if (c.detail.empty()) c.detail = what;
}

} // namespace

SuiteResult hochschild_suite(const HochSuiteBounds &b)
{
    SuiteResult out{"hochschild", true, {}};
    for (std::size_t n = 1; n <= b.max_vars; ++n) {
        const VarContext ctx = VarContext::numbered(n);
        const auto pool = hoch_pool(n, b.max_arity, b.poly_degree, b.op_order);
        const MultiDiffOp mu = MultiDiffOp::multiplication(n);
        const auto funcs = monomials_up_to(n, b.poly_degree);

        CaseResult sq = hoch_case("delta squared is zero" + nsuffix(n));
        CaseResult mud = hoch_case("[mu, D] = delta D" + nsuffix(n));
        CaseResult ia = hoch_case("i_a delta + delta i_a = 0" + nsuffix(n));
        for (const auto &d : pool) {
            const MultiDiffOp dd = hoch_delta(d);
            ++sq.checks;
            if (!hoch_delta(dd).is_zero()) fail(sq, d.to_string(ctx));
            ++mud.checks;
            if (!same(gerstenhaber(mu, d), dd)) fail(mud, d.to_string(ctx));
            for (const auto &m : funcs) {
                const Polynomial a(m, 1);
                ++ia.checks;
                if (!same(i_func_hoch(a, dd), -hoch_delta(i_func_hoch(a, d))))
                    fail(ia, "a = " + a.to_string(ctx) + ", D = " + d.to_string(ctx));
            }
        }
        out.add(sq);
        out.add(mud);
        out.add(ia);

        CaseResult cocycle = hoch_case("hkr images are cocycles" + nsuffix(n));
        CaseResult inter = hoch_case("hkr(i_a p) = (-1)^{|p|-1} i_a hkr(p)" + nsuffix(n));
        for (const auto &p : multivector_basis(n, b.poly_degree, b.max_arity)) {
            const MultiDiffOp h = hkr(p);
            ++cocycle.checks;
            if (!hoch_delta(h).is_zero()) fail(cocycle, p.to_string(ctx));
            for (const auto &m : funcs) {
                const Polynomial a(m, 1);
                ++inter.checks;
                MultiDiffOp rhs = i_func_hoch(a, h);
                if (odd(deg(p) - 1)) rhs = -rhs;
                if (!same(hkr(i_func_mv(a, p)), rhs)) fail(inter, "a = " + a.to_string(ctx) + ", p = " + p.to_string(ctx));
            }
        }
        out.add(cocycle);
        out.add(inter);

        // Two-cochain identities: arities adding up to at most max_arity,
        // coefficient degrees adding up to at most pair_poly_degree.
        const auto ppool = hoch_pool(n, b.max_arity, b.pair_poly_degree, b.pair_op_order);
        CaseResult dcup = hoch_case("delta(D u E) = dD u E + (-1)^|D| D u dE" + nsuffix(n));
        CaseResult icup = hoch_case("i_a(D u E) = i_a D u E + (-1)^|D| D u i_a E" + nsuffix(n));
        CaseResult anti = hoch_case("Gerstenhaber graded antisymmetry" + nsuffix(n));
        std::vector<Polynomial> probes;
        for (std::size_t i = 0; i < n; ++i) probes.push_back(Polynomial::variable(n, i));
        probes.push_back(Polynomial(monomials_up_to(n, 2).back(), 1));
        for (const auto &d : ppool)
            for (const auto &e : ppool) {
                if (d.arity() + e.arity() > b.max_arity) continue;
                if (static_cast<unsigned>(d.coefficient_degree() + e.coefficient_degree()) > b.pair_poly_degree) continue;
                const MultiDiffOp de = cup(d, e);
                const bool sign = odd(d.arity());
                ++dcup.checks;
                const MultiDiffOp rhs = plus(cup(hoch_delta(d), e), cup(d, hoch_delta(e)), sign);
                if (!same(hoch_delta(de), rhs)) fail(dcup, d.to_string(ctx) + " , " + e.to_string(ctx));
                for (const auto &a : probes) {
                    ++icup.checks;
                    const MultiDiffOp ad = i_func_hoch(a, d), ae = i_func_hoch(a, e);
                    const MultiDiffOp r2 = plus(ad.is_zero() ? ad : cup(ad, e), ae.is_zero() ? ae : cup(d, ae), sign);
                    if (!same(i_func_hoch(a, de), r2)) fail(icup, "a = " + a.to_string(ctx) + ": " + d.to_string(ctx) + " , " + e.to_string(ctx));
                }
                if (d.arity() + e.arity() >= 1) {
                    ++anti.checks;
                    MultiDiffOp other = gerstenhaber(e, d);
                    if (!odd((d.arity() - 1) * (e.arity() - 1))) other = -other;
                    if (!same(gerstenhaber(d, e), other)) fail(anti, d.to_string(ctx) + " , " + e.to_string(ctx));
                }
            }
        out.add(dcup);
        out.add(icup);
        out.add(anti);

        if (n <= b.jacobi_max_vars) {
            CaseResult jac = hoch_case("Gerstenhaber graded Jacobi" + nsuffix(n));
            const auto jpool = hoch_pool(n, b.jacobi_max_arity, b.jacobi_poly_degree, b.jacobi_op_order);
            const std::size_t N = jpool.size();
            std::vector<MultiDiffOp> br(N * N);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j) br[i * N + j] = gerstenhaber(jpool[i], jpool[j]);
            auto g = [&](std::size_t i) { return jpool[i].arity() - 1; };
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j)
                    for (std::size_t k = 0; k < N; ++k) {
                        if (i > j || j > k) continue;
                        ++jac.checks;
                        MultiDiffOp s = gerstenhaber(jpool[i], br[j * N + k]);
                        if (odd(g(i) * g(k))) s = -s;
                        MultiDiffOp t = gerstenhaber(jpool[j], br[k * N + i]);
                        if (odd(g(j) * g(i))) t = -t;
                        MultiDiffOp u = gerstenhaber(jpool[k], br[i * N + j]);
                        if (odd(g(k) * g(j))) u = -u;
                        if (!plus(plus(s, t, false), u, false).is_zero())
                            fail(jac, jpool[i].to_string(ctx) + " , " + jpool[j].to_string(ctx) + " , " + jpool[k].to_string(ctx));
                    }
            jac.detail = jac.passed ? std::to_string(N) + " generators" : jac.detail;
            out.add(jac);
        }
    }
    return out;
}

CaseResult gerstenhaber_jacobi_budgeted(std::size_t max_vars, int max_arity, unsigned op_order, unsigned poly_degree, double seconds)
{
    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(seconds));
    CaseResult c = hoch_case("Gerstenhaber graded Jacobi, full bounds");
    long double planned = 0;
    std::vector<std::vector<MultiDiffOp>> pools;
    for (std::size_t n = 1; n <= max_vars; ++n) {
        pools.push_back(hoch_pool(n, max_arity, poly_degree, op_order));
        const long double N = pools.back().size();
        planned += N * (N + 1) * (N + 2) / 6;
    }
    bool out_of_time = false;
    for (std::size_t p = 0; p < pools.size() && !out_of_time; ++p) {
        const auto &pool = pools[p];
        const VarContext ctx = VarContext::numbered(p + 1);
        auto g = [&](std::size_t i) { return pool[i].arity() - 1; };
        for (std::size_t i = 0; i < pool.size() && !out_of_time; ++i)
            for (std::size_t j = i; j < pool.size() && !out_of_time; ++j) {
                if (clock::now() > deadline) {
                    out_of_time = true;
                    break;
                }
                const MultiDiffOp ij = gerstenhaber(pool[i], pool[j]);
                for (std::size_t k = j; k < pool.size(); ++k) {
                    ++c.checks;
                    MultiDiffOp s = gerstenhaber(pool[i], gerstenhaber(pool[j], pool[k]));
                    if (odd(g(i) * g(k))) s = -s;
                    MultiDiffOp t = gerstenhaber(pool[j], gerstenhaber(pool[k], pool[i]));
                    if (odd(g(j) * g(i))) t = -t;
                    MultiDiffOp u = gerstenhaber(pool[k], ij);
                    if (odd(g(k) * g(j))) u = -u;
                    if (!plus(plus(s, t, false), u, false).is_zero())
                        fail(c, pool[i].to_string(ctx) + " , " + pool[j].to_string(ctx) + " , " + pool[k].to_string(ctx));
                }
            }
    }
    std::ostringstream os;
    os << c.checks << " of " << static_cast<unsigned long long>(planned) << " triples checked";
    if (out_of_time) {
        c.passed = false;
        os << "; time budget of " << std::fixed << std::setprecision(0) << seconds << " s exhausted"
           << (c.detail.empty() ? ", no violation among those checked" : ", violation: " + c.detail);
    } else if (!c.detail.empty()) {
        os << "; violation: " << c.detail;
    }
    c.detail = os.str();
    return c;
}

SuiteResult formality_suite(const FormalitySuiteBounds &b)
{
    SuiteResult out{"formality", true, {}};
    const PrimitiveBounds pb{b.primitive_poly_degree, b.primitive_op_order};
    for (std::size_t n = 1; n <= b.max_vars; ++n) {
        const VarContext ctx = VarContext::numbered(n);
        const auto basis = multivector_basis(n, b.poly_degree, b.mv_degree);
        CaseResult c{"[hkr p, hkr q] - hkr[p,q] is exact" + nsuffix(n), true, 0, {}};
        for (const auto &p : basis)
            for (const auto &q : basis) {
                ++c.checks;
                const MultiDiffOp t = gerstenhaber(hkr(p), hkr(q)) - hkr(schouten(p, q));
                const auto r = delta_primitive(t, pb);
                if (!r.found) fail(c, "no primitive for " + join_tuple({p, q}, ctx));
            }
        out.add(c);
    }
    const std::size_t n = 2;
    const PolyVector pxy = PolyVector::monomial(n, frame_from_indices({0, 1}, n), Polynomial::constant(n, 1));
    CaseResult cert{"hkr(D1^D2) has no primitive (rank certificate)", true, 0, {}};
    for (unsigned deg_bound = 0; deg_bound <= b.primitive_poly_degree; ++deg_bound)
        for (unsigned ord = 0; ord <= b.primitive_op_order; ++ord) {
            ++cert.checks;
            const auto r = delta_primitive(hkr(pxy), {deg_bound, ord});
            if (r.found || r.augmented_rank != r.rank + 1) fail(cert, "bounds " + std::to_string(deg_bound) + "/" + std::to_string(ord));
            if (deg_bound == b.primitive_poly_degree && ord == b.primitive_op_order)
                cert.detail = "rank " + std::to_string(r.rank) + " of " + std::to_string(r.unknowns) + " unknowns, augmented rank " +
                              std::to_string(r.augmented_rank);
        }
    out.add(cert);
    return out;
}

namespace {

PolyVector pick(std::mt19937 &rng, const std::vector<PolyVector> &pool, int terms)
{
    std::uniform_int_distribution<std::size_t> idx(0, pool.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    PolyVector v(pool.front().nvars());
    for (int t = 0; t < terms; ++t) v += pool[idx(rng)] * Rational(coef(rng));
    return v;
}

std::vector<PolyVector> of_degree(std::size_t n, unsigned poly, int d)
{
    std::vector<PolyVector> out;
    for (auto &v : multivector_basis(n, poly, d))
        if (deg(v) == d) out.push_back(std::move(v));
    return out;
}

} // namespace

SuiteResult deform_suite(const DeformSuiteBounds &b)
{
    SuiteResult out{"deform", true, {}};
    {
        const std::size_t n = 2;
        const auto s = make_twisted(DiffForm(n));
        const PolyVector pi1 = PolyVector::monomial(n, frame_from_indices({0, 1}, n), Polynomial::constant(n, 1));
        const auto rep = mc_solve(s, pi1, 4, 2);
        CaseResult c{"flat plane: solved with zero higher terms", rep.status == SolveStatus::Solved, 1, {}};
        for (int k = 2; k <= 4 && c.passed; ++k) c.passed = rep.solution.coeff(k).is_zero();
        c.passed = c.passed && defect_vanishes(defect_series(s, rep.solution));
        out.add(c);
    }
    {
        const std::size_t n = 4;
        const VarContext ctx = VarContext::numbered(n);
        const auto s = make_twisted(DiffForm::monomial(n, frame_from_indices({0, 1, 2}, n), Polynomial::constant(n, 1)));
        const PolyVector pi1 = PolyVector::monomial(n, frame_from_indices({0, 1}, n), Polynomial::constant(n, 1)) +
                               PolyVector::monomial(n, frame_from_indices({2, 3}, n), Polynomial::constant(n, 1));
        const auto solved = mc_solve(s, pi1, 2, 1);
        CaseResult c1{"twisted R^4: solved at order 2 with degree-1 bounds", solved.status == SolveStatus::Solved, 1, {}};
        if (c1.passed) c1.detail = "pi_2 = " + solved.solution.coeff(2).to_string(ctx);
        out.add(c1);
        const auto blocked = mc_solve(s, pi1, 2, 0);
        CaseResult c2{"twisted R^4: obstructed with degree-0 bounds", blocked.status == SolveStatus::Obstructed && blocked.obstructed_order == 3, 1, {}};
        c2.detail = "order " + std::to_string(blocked.obstructed_order) + ", residual " + blocked.residual.to_string(ctx);
        out.add(c2);
    }
    {
        std::mt19937 rng(b.seed);
        const int N = b.truncation;
        CaseResult c{"gauge flow keeps random solutions solutions", true, 0, {}};
        const std::size_t n4 = 4, n3 = 3;
        const auto tw = make_twisted(DiffForm::monomial(n4, frame_from_indices({0, 1, 2}, n4), Polynomial::constant(n4, 1)));
        const auto flat = make_twisted(DiffForm(n3));
        const auto const_biv4 = of_degree(n4, 0, 2);
        const auto fields4 = of_degree(n4, 2, 1);
        const auto lin_biv3 = of_degree(n3, 1, 2);
        const auto fields3 = of_degree(n3, 2, 1);
        int made = 0, attempts = 0, nontrivial = 0, in_twisted = 0;
        while (made < b.random_cases && attempts < 50 * b.random_cases) {
            ++attempts;
            const bool twisted = (attempts % 2) == 1;
            const TwistedStructure &s = twisted ? tw : flat;
            const PolyVector pi1 = twisted ? pick(rng, const_biv4, 3) : pick(rng, lin_biv3, 2);
            if (pi1.is_zero()) continue;
            const auto rep = mc_solve(s, pi1, N, 2);
            if (rep.status != SolveStatus::Solved) continue;
            GaugeParam xi(s.nvars, ArtinRing(N));
            for (int k = 1; k <= N; ++k) xi.set(k, pick(rng, twisted ? fields4 : fields3, 2));
            const auto moved = gauge_flow(s, rep.solution, xi);
            ++made;
            ++c.checks;
            if (!(moved == rep.solution)) ++nontrivial;
            if (twisted) ++in_twisted;
            if (!defect_vanishes(defect_series(s, moved))) fail(c, "case " + std::to_string(made));
        }
        if (made < b.random_cases) fail(c, "only " + std::to_string(made) + " solvable random instances");
        if (c.passed) c.detail = std::to_string(made) + " instances (" + std::to_string(in_twisted) + " twisted, " +
                                    std::to_string(nontrivial) + " moved by the flow), truncation " + std::to_string(N);
        out.add(c);
    }
    {
        const std::size_t n = 2;
        const auto s = make_twisted(DiffForm(n));
        const PolyVector p = PolyVector::monomial(n, frame_from_indices({0, 1}, n), Polynomial::constant(n, 1));
        ArtinSeries g1(n, ArtinRing(3)), g2(n, ArtinRing(3));
        g1.set(1, p);
        g2.set(1, p * Rational(2));
        const auto r = gauge_equivalent(s, g1, g2, 2);
        CaseResult c{"t D1^D2 and 2t D1^D2 are not gauge equivalent", !r.equivalent && r.failed_order == 1, 1, {}};
        out.add(c);
    }
    return out;
}

SuiteResult twisted_suite()
{
    SuiteResult out{"twisted", true, {}};
    auto form = [](std::size_t n, std::vector<std::size_t> idx) {
        return DiffForm::monomial(n, frame_from_indices(idx, n), Polynomial::constant(n, 1));
    };
    auto biv = [](std::size_t n, std::size_t i, std::size_t j, const Polynomial &f) {
        return PolyVector::monomial(n, frame_from_indices({i, j}, n), f);
    };
    const auto s3 = make_twisted(form(3, {0, 1, 2}));
    out.add({"H = dx^dy^dz, pi = Dx^Dy is twisted Poisson", is_twisted_poisson(s3, biv(3, 0, 1, Polynomial::constant(3, 1))), 1, {}});
    out.add({"H = dx^dy^dz, pi = y Dx^Dz is twisted Poisson", is_twisted_poisson(s3, biv(3, 0, 2, Polynomial::variable(3, 1))), 1, {}});
    const auto s4 = make_twisted(form(4, {0, 1, 2}));
    const PolyVector pi = biv(4, 0, 1, Polynomial::constant(4, 1)) + biv(4, 2, 3, Polynomial::constant(4, 1));
    const PolyVector defect = mc_defect(s4, pi);
    out.add({"H = dx1^dx2^dx3, pi = D1^D2 + D3^D4 is not", !is_twisted_poisson(s4, pi), 1,
             "defect " + defect.to_string(VarContext::numbered(4))});
    return out;
}

} // namespace twistdef
