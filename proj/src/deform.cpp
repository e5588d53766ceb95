#include <twistdef/deform.hpp>

#include <twistdef/errors.hpp>
#include <twistdef/linear_solve.hpp>

namespace twistdef {

ArtinRing::ArtinRing(int n) : truncation(n)
{
    if (n < 1) throw std::invalid_argument("truncation order must be at least 1");
}

ArtinSeries::ArtinSeries(std::size_t nvars, ArtinRing ring)
    : nvars_(nvars), ring_(ring), coeffs_(static_cast<std::size_t>(ring.truncation), PolyVector(nvars))
{
}

const PolyVector &ArtinSeries::coeff(int k) const
{
    if (k < 1 || k > ring_.truncation) throw IndexError("series order " + std::to_string(k) + " outside 1.." + std::to_string(ring_.truncation));
    return coeffs_[static_cast<std::size_t>(k - 1)];
}

void ArtinSeries::set(int k, PolyVector v)
{
    if (k < 1 || k > ring_.truncation) throw IndexError("series order " + std::to_string(k) + " outside 1.." + std::to_string(ring_.truncation));
    if (v.nvars() != nvars_) throw ContextMismatch(nvars_, v.nvars());
    coeffs_[static_cast<std::size_t>(k - 1)] = std::move(v);
}

void ArtinSeries::require_degree(int d, const char *what) const
{
    for (const auto &c : coeffs_)
        if (!c.is_zero() && c.degree() != d)
            throw DegreeError(std::string(what) + " coefficients must have degree " + std::to_string(d));
}

GaugeParam::GaugeParam(ArtinSeries s) : ArtinSeries(std::move(s))
{
    require_degree(1, "gauge parameter");
}

void GaugeParam::set(int k, PolyVector v)
{
    if (!v.is_zero() && v.degree() != 1) throw DegreeError("gauge parameter coefficients must be vector fields");
    ArtinSeries::set(k, std::move(v));
}

NotMaurerCartan::NotMaurerCartan(std::string which, int order)
    : std::invalid_argument(which + " has a nonzero defect at order " + std::to_string(order)), order_(order)
{
}

namespace {

using Coord = std::pair<Frame, Monomial>;

void scatter(const PolyVector &v, RowIndexer<Coord> &rows, SparseVec &out, const Rational &scale = Rational(1))
{
    for (const auto &[f, p] : v.terms())
        for (const auto &[m, c] : p.terms()) {
            Rational &slot = out[rows({f, m})];
            slot = slot + c * scale;
        }
}

// Order-k defect of pi, where pi_j for j >= k may be anything (they do not enter).
PolyVector defect_at(const TwistedStructure &s, const std::vector<const PolyVector *> &c, int k)
{
    PolyVector r(s.nvars);
    auto at = [&](int i) -> const PolyVector & { return *c[static_cast<std::size_t>(i)]; };
    for (int i = 1; i < k; ++i) {
        const int j = k - i;
        if (i > j) break;
        if (at(i).is_zero() || at(j).is_zero()) continue;
        PolyVector b = schouten(at(i), at(j));
        if (i != j) b *= Rational(2);
        r += b;
    }
    if (!s.l3.is_zero())
        for (int i = 1; i < k; ++i)
            for (int j = i; i + j < k; ++j) {
                const int l = k - i - j;
                if (l < j) continue;
                if (at(i).is_zero() || at(j).is_zero() || at(l).is_zero()) continue;
                // bivectors commute in the symmetric sum: count ordered triples
                const int mult = (i == j && j == l) ? 1 : (i == j || j == l) ? 3 : 6;
                r -= s.l3({at(i), at(j), at(l)}) * Rational(mult);
            }
    return r;
}

std::vector<const PolyVector *> coeff_table(const ArtinSeries &pi, int upto, const PolyVector &zero)
{
    std::vector<const PolyVector *> c(static_cast<std::size_t>(upto + 1), &zero);
    for (int k = 1; k <= std::min(upto, pi.truncation()); ++k) c[static_cast<std::size_t>(k)] = &pi.coeff(k);
    return c;
}

} // namespace

std::map<int, PolyVector> defect_series(const TwistedStructure &s, const ArtinSeries &pi)
{
    if (pi.nvars() != s.nvars) throw ContextMismatch(s.nvars, pi.nvars());
    pi.require_degree(2, "series");
    const PolyVector zero(s.nvars);
    const auto c = coeff_table(pi, pi.truncation(), zero);
    std::map<int, PolyVector> out;
    for (int k = 1; k <= pi.truncation(); ++k) out.emplace(k, defect_at(s, c, k));
    return out;
}

bool defect_vanishes(const std::map<int, PolyVector> &defect)
{
    for (const auto &[k, v] : defect)
        if (!v.is_zero()) return false;
    return true;
}

SolveReport mc_solve(const TwistedStructure &s, const PolyVector &pi1, int truncation, unsigned poly_degree)
{
    if (pi1.nvars() != s.nvars) throw ContextMismatch(s.nvars, pi1.nvars());
    if (!pi1.is_zero() && pi1.degree() != 2) throw DegreeError("mc_solve expects a bivector");
    const ArtinRing ring(truncation);
    SolveReport rep{SolveStatus::Solved, 0, PolyVector(s.nvars), ArtinSeries(s.nvars, ring), poly_degree, {}};
    rep.solution.set(1, pi1);

    auto finish = [&]() {
        rep.residual_terms.clear();
        for (const auto &[k, v] : defect_series(s, rep.solution)) rep.residual_terms.push_back(v.terms().size());
        return rep;
    };

    if (truncation >= 2) {
        PolyVector d2 = schouten(pi1, pi1);
        if (!d2.is_zero()) {
            rep.status = SolveStatus::Obstructed;
            rep.obstructed_order = 2;
            rep.residual = std::move(d2);
            return finish();
        }
    }

    std::vector<PolyVector> bivectors;
    for (auto &b : multivector_basis(s.nvars, poly_degree, 2))
        if (b.degree() == 2) bivectors.push_back(std::move(b));

    // Columns 2[pi1, b] do not depend on the order being solved.
    RowIndexer<Coord> rows;
    std::vector<SparseVec> columns(bivectors.size());
    for (std::size_t j = 0; j < bivectors.size(); ++j) scatter(schouten(pi1, bivectors[j]), rows, columns[j], Rational(2));

    const PolyVector zero(s.nvars);
    for (int k = 2; k <= truncation; ++k) {
        auto c = coeff_table(rep.solution, k + 1, zero);
        const PolyVector known = defect_at(s, c, k + 1);
        SparseVec rhs;
        scatter(known, rows, rhs, Rational(-1));
        const auto sol = solve_exact(columns, rhs, rows.size());
        if (!sol.consistent) {
            rep.status = SolveStatus::Obstructed;
            rep.obstructed_order = k + 1;
            rep.residual = known;
            return finish();
        }
        PolyVector pik(s.nvars);
        for (std::size_t j = 0; j < bivectors.size(); ++j)
            if (!sol.x[j].is_zero()) pik += bivectors[j] * sol.x[j];
        rep.solution.set(k, std::move(pik));
    }

    finish();
    if (!defect_vanishes(defect_series(s, rep.solution)))
        throw std::logic_error("mc_solve self-check failed: solved series has a nonzero defect");
    return rep;
}

namespace {

// Polynomial in the flow parameter s with multivector coefficients.
using SPoly = std::vector<PolyVector>;

template <class Op>
void accumulate_product(SPoly &out, const SPoly &a, const SPoly &b, Op op)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            if (out.size() <= i + j) out.resize(i + j + 1, PolyVector(a[i].nvars()));
            out[i + j] += op(a[i], b[j]);
        }
    }
}

} // namespace

ArtinSeries gauge_flow(const TwistedStructure &s, const ArtinSeries &gamma, const GaugeParam &xi)
{
    if (gamma.nvars() != s.nvars) throw ContextMismatch(s.nvars, gamma.nvars());
    if (xi.nvars() != s.nvars) throw ContextMismatch(s.nvars, xi.nvars());
    if (!(gamma.ring() == xi.ring())) throw std::invalid_argument("gauge_flow: series and parameter use different truncations");
    const int N = gamma.truncation();
    const std::size_t n = s.nvars;

    // g[k] = gamma_k(s) as a polynomial in s.
    std::vector<SPoly> g(static_cast<std::size_t>(N + 1));
    for (int k = 1; k <= N; ++k) {
        SPoly rhs;
        for (int i = 1; i < k; ++i) {
            const PolyVector &x = xi.coeff(i);
            if (x.is_zero()) continue;
            const SPoly xs{x};
            accumulate_product(rhs, xs, g[static_cast<std::size_t>(k - i)],
                               [](const PolyVector &a, const PolyVector &b) { return schouten(a, b); });
            if (s.l3.is_zero()) continue;
            for (int j = 1; i + j < k; ++j) {
                const int l = k - i - j;
                SPoly pair;
                accumulate_product(pair, g[static_cast<std::size_t>(j)], g[static_cast<std::size_t>(l)],
                                   [&](const PolyVector &a, const PolyVector &b) {
                                       return s.l3({x, a, b}) * Rational(3, 2);
                                   });
                for (std::size_t m = 0; m < pair.size(); ++m) {
                    if (rhs.size() <= m) rhs.resize(m + 1, PolyVector(n));
                    rhs[m] += pair[m];
                }
            }
        }
        SPoly gk{gamma.coeff(k)};
        for (std::size_t m = 0; m < rhs.size(); ++m) {
            if (rhs[m].is_zero()) continue;
            if (gk.size() <= m + 1) gk.resize(m + 2, PolyVector(n));
            gk[m + 1] -= rhs[m] * Rational(1, static_cast<std::int64_t>(m + 1));
        }
        g[static_cast<std::size_t>(k)] = std::move(gk);
    }

    ArtinSeries out(n, gamma.ring());
    for (int k = 1; k <= N; ++k) {
        PolyVector v(n);
        for (const auto &c : g[static_cast<std::size_t>(k)]) v += c;
        out.set(k, std::move(v));
    }
    return out;
}

GaugeResult gauge_equivalent(const TwistedStructure &s, const ArtinSeries &g1, const ArtinSeries &g2, unsigned poly_degree)
{
    if (!(g1.ring() == g2.ring())) throw std::invalid_argument("gauge_equivalent: different truncations");
    for (const auto *g : {&g1, &g2}) {
        const auto d = defect_series(s, *g);
        for (const auto &[k, v] : d)
            if (!v.is_zero()) throw NotMaurerCartan(g == &g1 ? "first series" : "second series", k);
    }
    const int N = g1.truncation();
    const std::size_t n = s.nvars;
    GaugeResult res;
    res.residual = PolyVector(n);

    // The flow never changes the t^1 coefficient.
    if (!(g1.coeff(1) == g2.coeff(1))) {
        res.failed_order = 1;
        res.residual = g2.coeff(1) - g1.coeff(1);
        return res;
    }

    std::vector<PolyVector> fields;
    for (auto &b : multivector_basis(n, poly_degree, 1))
        if (b.degree() == 1) fields.push_back(std::move(b));

    // Fields commuting with gamma_1 within bounds: adding one to xi_{k-1}
    // leaves orders <= k alone and moves order k+1 affinely.
    std::vector<PolyVector> kernel;
    {
        RowIndexer<Coord> krows;
        std::vector<SparseVec> kcols(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) scatter(schouten(fields[j], g1.coeff(1)), krows, kcols[j]);
        for (const auto &v : nullspace_exact(kcols, krows.size())) {
            PolyVector z(n);
            for (std::size_t j = 0; j < fields.size(); ++j)
                if (!v[j].is_zero()) z += fields[j] * v[j];
            kernel.push_back(std::move(z));
        }
    }

    GaugeParam xi(n, g1.ring());
    for (int k = 1; k < N; ++k) {
        // Unknowns: xi_k (enters order k+1 as -[xi_k, gamma_1]) and, for
        // k >= 2, a kernel correction of xi_{k-1}.
        const PolyVector base = gauge_flow(s, g1, xi).coeff(k + 1);
        const PolyVector gap = g2.coeff(k + 1) - base;
        std::vector<PolyVector> effects;
        for (const auto &b : fields) effects.push_back(-schouten(b, g1.coeff(1)));
        if (k >= 2)
            for (const auto &z : kernel) {
                GaugeParam trial = xi;
                trial.set(k - 1, xi.coeff(k - 1) + z);
                effects.push_back(gauge_flow(s, g1, trial).coeff(k + 1) - base);
            }
        RowIndexer<Coord> rows;
        std::vector<SparseVec> columns(effects.size());
        for (std::size_t j = 0; j < effects.size(); ++j) scatter(effects[j], rows, columns[j]);
        SparseVec rhs;
        scatter(gap, rows, rhs);
        const auto sol = solve_exact(columns, rhs, rows.size());
        if (!sol.consistent) {
            res.failed_order = k + 1;
            res.residual = gap;
            return res;
        }
        PolyVector xk(n);
        for (std::size_t j = 0; j < fields.size(); ++j)
            if (!sol.x[j].is_zero()) xk += fields[j] * sol.x[j];
        xi.set(k, std::move(xk));
        if (k >= 2) {
            PolyVector prev = xi.coeff(k - 1);
            for (std::size_t j = 0; j < kernel.size(); ++j)
                if (!sol.x[fields.size() + j].is_zero()) prev += kernel[j] * sol.x[fields.size() + j];
            xi.set(k - 1, std::move(prev));
        }
        const ArtinSeries now = gauge_flow(s, g1, xi);
        for (int j = 1; j <= k + 1; ++j)
            if (!(now.coeff(j) == g2.coeff(j))) {
                res.failed_order = j;
                res.residual = g2.coeff(j) - now.coeff(j);
                return res;
            }
    }
    if (!(gauge_flow(s, g1, xi) == g2)) throw std::logic_error("gauge_equivalent: witness failed verification");
    res.equivalent = true;
    res.witness = std::move(xi);
    return res;
}

} // namespace twistdef
