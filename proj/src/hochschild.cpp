#include <twistdef/hochschild.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <twistdef/errors.hpp>
#include <twistdef/koszul.hpp>
#include <twistdef/linear_solve.hpp>

namespace twistdef {

bool OrdersLess::operator()(const std::vector<Monomial> &a, const std::vector<Monomial> &b) const
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

Rational binomial(unsigned n, unsigned k)
{
    std::int64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return Rational(r);
}

// prod_i C(a_i, b_i)
Rational binomial(const Monomial &a, const Monomial &b)
{
    Rational r(1);
    for (std::size_t i = 0; i < a.nvars(); ++i) r = r * binomial(a[i], b[i]);
    return r;
}

// Calls fn(b) for every multi-index b <= a.
void for_each_below(const Monomial &a, const std::function<void(const Monomial &)> &fn)
{
    const std::size_t n = a.nvars();
    std::vector<unsigned> e(n, 0);
    auto rec = [&](auto &&self, std::size_t i) -> void {
        if (i == n) {
            fn(Monomial(n, e));
            return;
        }
        for (unsigned v = 0; v <= a[i]; ++v) {
            e[i] = v;
            self(self, i + 1);
        }
        e[i] = 0;
    };
    rec(rec, 0);
}

// Leibniz: d^alpha (c * prod_q d^{beta_q} a_q) as a list of (coefficient, orders).
void distribute(const Monomial &alpha, const Polynomial &c, const MultiDiffOp::Orders &beta,
                const std::function<void(const Polynomial &, const MultiDiffOp::Orders &)> &emit)
{
    MultiDiffOp::Orders out(beta.size());
    auto rec = [&](auto &&self, std::size_t q, const Monomial &rest, const Rational &weight) -> void {
        if (q == beta.size()) {
            Polynomial coeff = c.derivative(rest) * weight;
            if (!coeff.is_zero()) emit(coeff, out);
            return;
        }
        for_each_below(rest, [&](const Monomial &g) {
            out[q] = beta[q] * g;
            self(self, q + 1, rest.quotient(g), weight * binomial(rest, g));
        });
    };
    rec(rec, 0, alpha, Rational(1));
}

} // namespace

MultiDiffOp::MultiDiffOp(std::size_t nvars, int arity) : nvars_(nvars), arity_(arity)
{
    if (arity < 0) throw std::invalid_argument("cochain arity must be non-negative");
}

MultiDiffOp MultiDiffOp::function(const Polynomial &f)
{
    MultiDiffOp d(f.nvars(), 0);
    d.add_term({}, f);
    return d;
}

MultiDiffOp MultiDiffOp::term(const Polynomial &coeff, Orders orders)
{
    MultiDiffOp d(coeff.nvars(), static_cast<int>(orders.size()));
    d.add_term(orders, coeff);
    return d;
}

MultiDiffOp MultiDiffOp::identity(std::size_t nvars)
{
    return term(Polynomial::constant(nvars, 1), {Monomial(nvars)});
}

MultiDiffOp MultiDiffOp::multiplication(std::size_t nvars)
{
    return term(Polynomial::constant(nvars, 1), {Monomial(nvars), Monomial(nvars)});
}

MultiDiffOp MultiDiffOp::derivation(std::size_t nvars, std::size_t i, const Polynomial &f)
{
    if (i >= nvars) throw IndexError("derivation index out of range");
    return term(f, {Monomial::variable(nvars, i)});
}

int MultiDiffOp::order() const
{
    int best = -1;
    for (const auto &[o, c] : terms_) {
        int s = 0;
        for (const auto &m : o) s = std::max(s, static_cast<int>(m.degree()));
        best = std::max(best, s);
    }
    return best;
}

int MultiDiffOp::total_order() const
{
    int best = -1;
    for (const auto &[o, c] : terms_) {
        int s = 0;
        for (const auto &m : o) s += static_cast<int>(m.degree());
        best = std::max(best, s);
    }
    return best;
}

int MultiDiffOp::coefficient_degree() const
{
    int best = -1;
    for (const auto &[o, c] : terms_) best = std::max(best, c.degree());
    return best;
}

void MultiDiffOp::add_term(const Orders &orders, const Polynomial &coeff)
{
    if (static_cast<int>(orders.size()) != arity_) throw std::invalid_argument("term arity does not match the cochain");
    if (coeff.nvars() != nvars_) throw ContextMismatch(nvars_, coeff.nvars());
    for (const auto &m : orders)
        if (m.nvars() != nvars_) throw ContextMismatch(nvars_, m.nvars());
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(orders, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiDiffOp::check(const MultiDiffOp &o) const
{
    if (nvars_ != o.nvars_) throw ContextMismatch(nvars_, o.nvars_);
    if (arity_ != o.arity_) throw std::invalid_argument("cochains of different arity");
}

MultiDiffOp &MultiDiffOp::operator+=(const MultiDiffOp &o)
{
    if (o.is_zero()) return *this;
    check(o);
    for (const auto &[ord, c] : o.terms_) add_term(ord, c);
    return *this;
}

MultiDiffOp &MultiDiffOp::operator-=(const MultiDiffOp &o)
{
    if (o.is_zero()) return *this;
    check(o);
    for (const auto &[ord, c] : o.terms_) add_term(ord, -c);
    return *this;
}

MultiDiffOp &MultiDiffOp::operator*=(const Rational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[ord, p] : terms_) p *= c;
    return *this;
}

MultiDiffOp MultiDiffOp::operator-() const
{
    MultiDiffOp r = *this;
    r *= Rational(-1);
    return r;
}

bool operator==(const MultiDiffOp &a, const MultiDiffOp &b)
{
    if (a.is_zero() && b.is_zero()) return a.nvars_ == b.nvars_;
    return a.nvars_ == b.nvars_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

Polynomial MultiDiffOp::operator()(std::span<const Polynomial> args) const
{
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("cochain of arity " + std::to_string(arity_) + " applied to " + std::to_string(args.size()) + " arguments");
    Polynomial r(nvars_);
    for (const auto &[ord, c] : terms_) {
        Polynomial v = c;
        for (std::size_t j = 0; j < ord.size() && !v.is_zero(); ++j) v = v * args[j].derivative(ord[j]);
        r += v;
    }
    return r;
}

Polynomial MultiDiffOp::operator()(std::initializer_list<Polynomial> args) const
{
    return (*this)(std::span<const Polynomial>(args.begin(), args.size()));
}

std::string MultiDiffOp::to_string(const VarContext &ctx) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[ord, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string(ctx) << ")[";
        for (std::size_t j = 0; j < ord.size(); ++j) {
            if (j) os << " | ";
            os << Polynomial(ord[j], 1).to_string(ctx);
        }
        os << "]";
    }
    return os.str();
}

MultiDiffOp hoch_delta(const MultiDiffOp &d)
{
    const std::size_t n = d.nvars();
    const int k = d.arity();
    MultiDiffOp r(n, k + 1);
    const Monomial none(n);
    for (const auto &[ord, c] : d.terms()) {
        MultiDiffOp::Orders o;
        o.reserve(static_cast<std::size_t>(k + 1));
        // a_0 D(a_1..a_k)
        o.push_back(none);
        o.insert(o.end(), ord.begin(), ord.end());
        r.add_term(o, c);
        // (-1)^i D(.., a_{i-1} a_i, ..)
        for (int i = 1; i <= k; ++i) {
            const Monomial &alpha = ord[static_cast<std::size_t>(i - 1)];
            const Polynomial signed_c = (i % 2) ? -c : c;
            for_each_below(alpha, [&](const Monomial &b) {
                MultiDiffOp::Orders t;
                t.reserve(static_cast<std::size_t>(k + 1));
                for (int j = 0; j < i - 1; ++j) t.push_back(ord[static_cast<std::size_t>(j)]);
                t.push_back(b);
                t.push_back(alpha.quotient(b));
                for (int j = i; j < k; ++j) t.push_back(ord[static_cast<std::size_t>(j)]);
                r.add_term(t, signed_c * binomial(alpha, b));
            });
        }
        // (-1)^{k+1} D(a_0..a_{k-1}) a_k
        MultiDiffOp::Orders last(ord.begin(), ord.end());
        last.push_back(none);
        r.add_term(last, ((k + 1) % 2) ? -c : c);
    }
    return r;
}

MultiDiffOp brace(const MultiDiffOp &d, std::span<const MultiDiffOp> args)
{
    const std::size_t n = d.nvars();
    const int k = d.arity();
    const int m = static_cast<int>(args.size());
    if (m > k) throw std::invalid_argument("brace: " + std::to_string(m) + " insertions into a cochain of arity " + std::to_string(k));
    int total = k - m;
    for (const auto &e : args) {
        if (e.nvars() != n) throw ContextMismatch(n, e.nvars());
        total += e.arity();
    }
    MultiDiffOp r(n, total);
    if (d.is_zero()) return r;
    for (const auto &e : args)
        if (e.is_zero()) return r;

    MultiDiffOp::Orders orders;
    orders.reserve(static_cast<std::size_t>(total));
    for (const auto &[dord, dc] : d.terms()) {
        // slot j of D, next insertion p, accumulated coefficient and sign
        auto rec = [&](auto &&self, int j, int p, const Polynomial &coeff, int parity) -> void {
            if (j == k) {
                if (p == m) r.add_term(orders, parity ? -coeff : coeff);
                return;
            }
            const Monomial &alpha = dord[static_cast<std::size_t>(j)];
            // leave slot j as an input
            if (k - j > m - p) {
                orders.push_back(alpha);
                self(self, j + 1, p, coeff, parity);
                orders.pop_back();
            }
            if (p == m) return;
            const MultiDiffOp &e = args[static_cast<std::size_t>(p)];
            const int l = e.arity();
            const int before = static_cast<int>(orders.size());
            const int after = total - before - l;
            const int s = parity ^ (((l - 1) * after) & 1);
            for (const auto &[eord, ec] : e.terms()) {
                distribute(alpha, ec, eord, [&](const Polynomial &c2, const MultiDiffOp::Orders &o2) {
                    orders.insert(orders.end(), o2.begin(), o2.end());
                    self(self, j + 1, p + 1, coeff * c2, s);
                    orders.resize(static_cast<std::size_t>(before));
                });
            }
        };
        rec(rec, 0, 0, dc, 0);
    }
    return r;
}

MultiDiffOp brace(const MultiDiffOp &d, std::initializer_list<MultiDiffOp> args)
{
    return brace(d, std::span<const MultiDiffOp>(args.begin(), args.size()));
}

MultiDiffOp gerstenhaber(const MultiDiffOp &d, const MultiDiffOp &e)
{
    if (d.nvars() != e.nvars()) throw ContextMismatch(d.nvars(), e.nvars());
    const int total = std::max(d.arity() + e.arity() - 1, 0);
    MultiDiffOp r(d.nvars(), total);
    if (d.arity() >= 1) r += brace(d, {e});
    if (e.arity() >= 1) {
        const MultiDiffOp ed = brace(e, {d});
        if (((d.arity() - 1) * (e.arity() - 1)) & 1) r += ed;
        else r -= ed;
    }
    return r;
}

MultiDiffOp cup(const MultiDiffOp &d, const MultiDiffOp &e)
{
    if (d.nvars() != e.nvars()) throw ContextMismatch(d.nvars(), e.nvars());
    MultiDiffOp r(d.nvars(), d.arity() + e.arity());
    for (const auto &[od, cd] : d.terms())
        for (const auto &[oe, ce] : e.terms()) {
            MultiDiffOp::Orders o(od);
            o.insert(o.end(), oe.begin(), oe.end());
            r.add_term(o, cd * ce);
        }
    return r;
}

MultiDiffOp i_func_hoch(const Polynomial &a, const MultiDiffOp &d)
{
    if (a.nvars() != d.nvars()) throw ContextMismatch(a.nvars(), d.nvars());
    const int k = d.arity();
    if (k == 0) return MultiDiffOp(d.nvars(), 0);
    MultiDiffOp r(d.nvars(), k - 1);
    for (const auto &[ord, c] : d.terms())
        for (int i = 0; i < k; ++i) {
            Polynomial v = c * a.derivative(ord[static_cast<std::size_t>(i)]);
            if (v.is_zero()) continue;
            MultiDiffOp::Orders o;
            for (int j = 0; j < k; ++j)
                if (j != i) o.push_back(ord[static_cast<std::size_t>(j)]);
            r.add_term(o, (i % 2) ? -v : v);
        }
    return r;
}

MultiDiffOp hkr(const PolyVector &pi)
{
    const std::size_t n = pi.nvars();
    if (pi.is_zero()) return MultiDiffOp(n, 0);
    const auto deg = pi.degree();
    if (!deg) throw DegreeError("hkr expects a homogeneous multivector");
    const int k = *deg;
    MultiDiffOp r(n, k);
    Rational fact(1);
    for (int i = 2; i <= k; ++i) fact = fact * Rational(i);
    const Rational scale = Rational(1) / fact;
    for (const auto &[frame, f] : pi.terms()) {
        const auto idx = frame_indices(frame);
        std::vector<std::size_t> perm(idx.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        do {
            MultiDiffOp::Orders o;
            for (std::size_t p : perm) o.push_back(Monomial::variable(n, idx[p]));
            r.add_term(o, f * (scale * Rational(permutation_sign(perm))));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return r;
}

std::vector<MultiDiffOp> hoch_basis(std::size_t nvars, int arity, unsigned poly_degree, unsigned op_order)
{
    std::vector<MultiDiffOp> out;
    const auto coeffs = monomials_up_to(nvars, poly_degree);
    const auto slot_orders = monomials_up_to(nvars, op_order);
    MultiDiffOp::Orders o;
    std::vector<MultiDiffOp::Orders> tuples;
    auto rec = [&](auto &&self, int slot) -> void {
        if (slot == arity) {
            tuples.push_back(o);
            return;
        }
        for (const auto &m : slot_orders) {
            o.push_back(m);
            self(self, slot + 1);
            o.pop_back();
        }
    };
    rec(rec, 0);
    for (const auto &t : tuples)
        for (const auto &c : coeffs) out.push_back(MultiDiffOp::term(Polynomial(c, 1), t));
    return out;
}

namespace {

using HochCoord = std::pair<MultiDiffOp::Orders, Monomial>;

struct HochCoordLess {
    bool operator()(const HochCoord &a, const HochCoord &b) const
    {
        if (OrdersLess{}(a.first, b.first)) return true;
        if (OrdersLess{}(b.first, a.first)) return false;
        return a.second < b.second;
    }
};

void scatter(const MultiDiffOp &d, RowIndexer<HochCoord, HochCoordLess> &rows, SparseVec &out)
{
    for (const auto &[o, c] : d.terms())
        for (const auto &[m, v] : c.terms()) out[rows({o, m})] = v;
}

} // namespace

PrimitiveResult delta_primitive(const MultiDiffOp &t, const PrimitiveBounds &bounds)
{
    PrimitiveResult res;
    const std::size_t n = t.nvars();
    const int k = t.arity();
    res.residual = MultiDiffOp(n, k);
    if (t.is_zero()) {
        res.found = true;
        res.primitive = MultiDiffOp(n, std::max(k - 1, 0));
        return res;
    }
    if (k == 0) {
        res.augmented_rank = 1;
        res.residual = t;
        return res;
    }
    const auto candidates = hoch_basis(n, k - 1, bounds.poly_degree, bounds.op_order);
    res.unknowns = candidates.size();
    RowIndexer<HochCoord, HochCoordLess> rows;
    std::vector<SparseVec> columns(candidates.size());
    for (std::size_t j = 0; j < candidates.size(); ++j) scatter(hoch_delta(candidates[j]), rows, columns[j]);
    SparseVec rhs;
    scatter(t, rows, rhs);
    const auto sol = solve_exact(columns, rhs, rows.size());
    res.rank = sol.rank;
    if (!sol.consistent) {
        res.augmented_rank = sol.rank + 1;
        res.residual = t;
        return res;
    }
    res.augmented_rank = sol.rank;
    MultiDiffOp xi(n, k - 1);
    for (std::size_t j = 0; j < candidates.size(); ++j)
        if (!sol.x[j].is_zero()) xi += candidates[j] * sol.x[j];
    if (!(hoch_delta(xi) == t)) throw std::logic_error("delta_primitive: solution failed verification");
    res.found = true;
    res.primitive = std::move(xi);
    return res;
}

} // namespace twistdef
