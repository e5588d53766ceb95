#include <twistdef/chevalley.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>

#include <twistdef/errors.hpp>
#include <twistdef/koszul.hpp>

namespace twistdef {

namespace {

using ArgList = Cochain::ArgList;

int parity_of(const PolyVector &v)
{
    return *v.degree() & 1;
}

// Calls `body(args)` for every choice of homogeneous components of `args`.
template <class Body>
void expand_homogeneous(ArgList args, Body &&body)
{
    std::vector<std::vector<PolyVector>> comps(args.size());
    for (std::size_t j = 0; j < args.size(); ++j)
        for (int k : args[j]->degrees()) comps[j].push_back(args[j]->component(k));
    std::vector<const PolyVector *> pick(args.size());
    auto rec = [&](auto &&self, std::size_t j) -> void {
        if (j == args.size()) {
            body(ArgList(pick));
            return;
        }
        for (const auto &c : comps[j]) {
            pick[j] = &c;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
}

} // namespace

Cochain::Cochain(std::size_t nvars, int arity, int shift, int order, Evaluator eval, std::string label)
    : nvars_(nvars), arity_(arity), shift_(shift), order_(order),
      eval_(eval ? std::make_shared<const Evaluator>(std::move(eval)) : nullptr), label_(std::move(label))
{
    if (arity < 0) throw std::invalid_argument("cochain arity must be non-negative");
}

Cochain Cochain::zero(std::size_t nvars, int arity, int shift)
{
    return Cochain(nvars, arity, shift, 0, nullptr, "0");
}

PolyVector Cochain::evaluate(ArgList args) const
{
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("cochain of arity " + std::to_string(arity_) + " applied to " + std::to_string(args.size()) + " arguments");
    PolyVector zero_value(nvars_);
    if (!eval_) return zero_value;
    bool homogeneous = true;
    for (const PolyVector *a : args) {
        if (a->nvars() != nvars_) throw ContextMismatch(nvars_, a->nvars());
        if (a->is_zero()) return zero_value;
        homogeneous = homogeneous && a->degree().has_value();
    }
    if (homogeneous) return (*eval_)(args);
    PolyVector sum(nvars_);
    expand_homogeneous(args, [&](ArgList h) { sum += (*eval_)(h); });
    return sum;
}

PolyVector Cochain::operator()(std::span<const PolyVector> args) const
{
    std::vector<const PolyVector *> ptrs;
    ptrs.reserve(args.size());
    for (const auto &a : args) ptrs.push_back(&a);
    return evaluate(ptrs);
}

PolyVector Cochain::operator()(std::initializer_list<PolyVector> args) const
{
    return (*this)(std::span<const PolyVector>(args.begin(), args.size()));
}

Cochain operator+(const Cochain &a, const Cochain &b)
{
    if (a.arity_ != b.arity_) throw std::invalid_argument("cannot add cochains of different arity");
    if (a.nvars_ != b.nvars_) throw ContextMismatch(a.nvars_, b.nvars_);
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.shift_ != b.shift_) throw std::invalid_argument("cannot add cochains of different degree");
    const int order = (a.order_ < 0 || b.order_ < 0) ? -1 : std::max(a.order_, b.order_);
    return Cochain(a.nvars_, a.arity_, a.shift_, order,
                   [a, b](ArgList args) { return a.evaluate(args) + b.evaluate(args); },
                   "(" + a.label_ + " + " + b.label_ + ")");
}

Cochain operator*(const Rational &c, const Cochain &a)
{
    if (c.is_zero() || a.is_zero()) return Cochain::zero(a.nvars_, a.arity_, a.shift_);
    return Cochain(a.nvars_, a.arity_, a.shift_, a.order_, [c, a](ArgList args) { return a.evaluate(args) * c; },
                   c.to_string() + "*" + a.label_);
}

Cochain operator-(const Cochain &a, const Cochain &b)
{
    return a + Rational(-1) * b;
}

int phi_sign_exponent(std::span<const int> degrees)
{
    const int k = static_cast<int>(degrees.size());
    int e = 0;
    for (int j = 1; j < k; ++j) e += (k - j) * (degrees[j - 1] - 1);
    e += k * (k - 1) / 2;
    return e;
}

namespace {

struct PhiTerm {
    std::vector<std::size_t> idx;
    Polynomial coeff;
};

PolyVector phi_evaluate(std::size_t nvars, const std::vector<PhiTerm> &terms, ArgList args)
{
    const std::size_t k = args.size();
    PolyVector result(nvars);
    std::vector<int> degrees(k);
    int total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        degrees[j] = *args[j]->degree();
        if (degrees[j] == 0) return result; // <dx, f> = 0
        total += degrees[j];
    }
    if (total - static_cast<int>(k) > static_cast<int>(nvars)) return result;

    // derivative cache: odd_derivative(pi_j, i)
    std::array<std::vector<PolyVector>, max_vars> cache;
    auto deriv = [&](std::size_t i, std::size_t j) -> const PolyVector & {
        auto &row = cache[i];
        if (row.empty()) {
            row.reserve(k);
            for (std::size_t jj = 0; jj < k; ++jj) row.push_back(odd_derivative(*args[jj], i));
        }
        return row[j];
    };

    for (const auto &term : terms) {
        PolyVector sum(nvars);
        // sum_sigma sgn(sigma) prod_j <dx_{idx[sigma(j)]}, pi_j>, sign from the Lehmer code
        auto rec = [&](auto &&self, std::size_t j, unsigned used, const PolyVector *acc, int parity) -> void {
            if (j == k) {
                if (parity) sum -= *acc;
                else sum += *acc;
                return;
            }
            int unused_before = 0;
            for (std::size_t u = 0; u < k; ++u) {
                if (used & (1u << u)) continue;
                const PolyVector &dv = deriv(term.idx[u], j);
                if (!dv.is_zero()) {
                    const int p = parity ^ (unused_before & 1);
                    if (acc == nullptr) {
                        self(self, j + 1, used | (1u << u), &dv, p);
                    } else {
                        PolyVector next = wedge(*acc, dv);
                        if (!next.is_zero()) self(self, j + 1, used | (1u << u), &next, p);
                    }
                }
                ++unused_before;
            }
        };
        rec(rec, 0, 0u, nullptr, 0);
        if (!sum.is_zero()) result += sum.times(term.coeff);
    }
    if (phi_sign_exponent(degrees) & 1) result = -result;
    return result;
}

} // namespace

PhiCochain phi(const DiffForm &w, int degree)
{
    const std::size_t n = w.nvars();
    if (degree < 0) throw DegreeError("form degree must be non-negative");
    if (!w.is_zero() && w.degree() != degree) throw DegreeError("phi expects a homogeneous form of degree " + std::to_string(degree));
    if (w.is_zero()) return PhiCochain(Cochain::zero(n, degree, -degree), w);
    if (degree == 0) {
        PolyVector value = PolyVector::scalar(w.coefficient(0));
        return PhiCochain(Cochain(n, 0, 0, 0, [value](ArgList) { return value; }, "phi(0-form)"), w);
    }
    std::vector<PhiTerm> terms;
    for (const auto &[f, p] : w.terms()) terms.push_back({frame_indices(f), p});
    auto shared = std::make_shared<const std::vector<PhiTerm>>(std::move(terms));
    Cochain c(n, degree, -degree, 0, [n, shared](ArgList args) { return phi_evaluate(n, *shared, args); },
              "phi(" + std::to_string(degree) + "-form)");
    return PhiCochain(std::move(c), w);
}

PhiCochain phi(const DiffForm &w)
{
    if (w.is_zero()) throw DegreeError("phi of the zero form needs an explicit degree");
    const auto k = w.degree();
    if (!k) throw DegreeError("phi expects a homogeneous form");
    return phi(w, *k);
}

Cochain structure_cochain(std::size_t nvars)
{
    return Cochain(
        nvars, 2, -1, 1,
        [](ArgList args) {
            PolyVector r = schouten(*args[0], *args[1]);
            if (((*args[0]->degree() - 1) & 1) != 0) r = -r;
            return r;
        },
        "m");
}

Cochain cochain_compose(const Cochain &f, const Cochain &g)
{
    if (f.nvars() != g.nvars()) throw ContextMismatch(f.nvars(), g.nvars());
    const int kf = f.arity(), kg = g.arity();
    const int arity = std::max(kf + kg - 1, 0);
    const int shift = f.shift() + g.shift();
    if (kf == 0 || f.is_zero() || g.is_zero()) return Cochain::zero(f.nvars(), arity, shift);
    const int order = (f.order() < 0 || g.order() < 0) ? -1 : f.order() + g.order();
    const std::size_t n = f.nvars();
    auto eval = [f, g, kg, arity, n](ArgList args) {
        PolyVector result(n);
        std::vector<int> degrees(args.size());
        for (std::size_t j = 0; j < args.size(); ++j) degrees[j] = *args[j]->degree();
        std::vector<std::size_t> inner_idx;
        std::vector<const PolyVector *> inner_args(kg), outer_args(static_cast<std::size_t>(arity - kg + 1));
        // Enumerate I as increasing index sets of size kg.
        auto rec = [&](auto &&self, std::size_t start) -> void {
            if (static_cast<int>(inner_idx.size()) == kg) {
                for (int t = 0; t < kg; ++t) inner_args[t] = args[inner_idx[t]];
                PolyVector inner = g.evaluate(inner_args);
                if (inner.is_zero()) return;
                outer_args[0] = &inner;
                std::size_t pos = 1, k = 0;
                for (std::size_t j = 0; j < args.size(); ++j) {
                    if (k < inner_idx.size() && inner_idx[k] == j) {
                        ++k;
                        continue;
                    }
                    outer_args[pos++] = args[j];
                }
                PolyVector value = f.evaluate(outer_args);
                if (value.is_zero()) return;
                if (unshuffle_sign(degrees, inner_idx) < 0) result -= value;
                else result += value;
                return;
            }
            const std::size_t need = kg - inner_idx.size();
            for (std::size_t j = start; j + need <= args.size(); ++j) {
                inner_idx.push_back(j);
                self(self, j + 1);
                inner_idx.pop_back();
            }
        };
        rec(rec, 0);
        return result;
    };
    return Cochain(n, arity, shift, order, eval, f.label() + "o" + g.label());
}

Cochain cochain_bracket(const Cochain &f, const Cochain &g)
{
    const Cochain fg = cochain_compose(f, g);
    const Cochain gf = cochain_compose(g, f);
    const bool odd = (f.degree() & 1) && (g.degree() & 1);
    return odd ? fg + gf : fg - gf;
}

Cochain cochain_differential(const Cochain &f)
{
    return cochain_bracket(structure_cochain(f.nvars()), f);
}

void for_each_basis_tuple(std::size_t nvars, int arity, const BasisBounds &bounds, std::optional<unsigned> degree_cap,
                          std::optional<int> shift, const std::function<bool(ArgList)> &visit)
{
    unsigned per_arg = bounds.poly_degree;
    if (degree_cap) per_arg = std::min(per_arg, *degree_cap);
    const auto basis = multivector_basis(nvars, per_arg, bounds.mv_degree);
    std::vector<int> mv(basis.size()), cd(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        mv[b] = *basis[b].degree();
        cd[b] = basis[b].coefficient_degree();
    }
    const int n = static_cast<int>(nvars);
    std::vector<const PolyVector *> tuple(static_cast<std::size_t>(arity));
    bool stop = false;
    auto rec = [&](auto &&self, int pos, std::size_t start, unsigned cdeg, int psum) -> void {
        if (stop) return;
        if (pos == arity) {
            if (shift && (psum + *shift < 0 || psum + *shift > n)) return;
            if (!visit(ArgList(tuple))) stop = true;
            return;
        }
        for (std::size_t b = bounds.symmetric ? start : 0; b < basis.size() && !stop; ++b) {
            const unsigned c = cdeg + static_cast<unsigned>(cd[b]);
            if (degree_cap && c > *degree_cap) continue;
            if (shift && psum + mv[b] + *shift > n) continue;
            tuple[pos] = &basis[b];
            self(self, pos + 1, b, c, psum + mv[b]);
        }
    };
    rec(rec, 0, 0, 0u, 0);
}

namespace {

std::optional<unsigned> effective_cap(const Cochain &a, const Cochain &b, const BasisBounds &bounds)
{
    std::optional<unsigned> cap = bounds.total_degree;
    if (bounds.use_order_cap) {
        const int oa = a.is_zero() ? 0 : a.order();
        const int ob = b.is_zero() ? 0 : b.order();
        if (oa >= 0 && ob >= 0) {
            const auto order_cap = static_cast<unsigned>(std::max(oa, ob));
            cap = cap ? std::min(*cap, order_cap) : order_cap;
        }
    }
    return cap;
}

std::optional<int> pruning_shift(const Cochain &a, const Cochain &b)
{
    if (a.is_zero()) return b.shift();
    if (b.is_zero()) return a.shift();
    if (a.shift() == b.shift()) return a.shift();
    return std::nullopt;
}

std::vector<PolyVector> copy_tuple(ArgList args)
{
    std::vector<PolyVector> out;
    for (const auto *a : args) out.push_back(*a);
    return out;
}

} // namespace

EqualityReport cochain_equal_on_basis(const Cochain &a, const Cochain &b, const BasisBounds &bounds)
{
    if (a.arity() != b.arity()) throw std::invalid_argument("cochain_equal_on_basis: arity mismatch");
    if (a.nvars() != b.nvars()) throw ContextMismatch(a.nvars(), b.nvars());
    EqualityReport report;
    for_each_basis_tuple(a.nvars(), a.arity(), bounds, effective_cap(a, b, bounds), pruning_shift(a, b), [&](ArgList args) {
        ++report.tuples_checked;
        PolyVector va = a.evaluate(args);
        PolyVector vb = b.evaluate(args);
        if (va == vb) return true;
        report.equal = false;
        report.witness = Witness{copy_tuple(args), std::move(va), std::move(vb)};
        return false;
    });
    return report;
}

EqualityReport cochain_vanishes_on_basis(const Cochain &a, const BasisBounds &bounds)
{
    return cochain_equal_on_basis(a, Cochain::zero(a.nvars(), a.arity(), a.shift()), bounds);
}

EqualityReport graded_symmetry_check(const Cochain &f, const BasisBounds &bounds)
{
    BasisBounds ordered = bounds;
    ordered.symmetric = false;
    const Cochain none = Cochain::zero(f.nvars(), f.arity(), f.shift());
    EqualityReport report;
    std::vector<const PolyVector *> swapped;
    for_each_basis_tuple(f.nvars(), f.arity(), ordered, effective_cap(f, none, ordered), f.shift(), [&](ArgList args) {
        ++report.tuples_checked;
        const PolyVector value = f.evaluate(args);
        swapped.assign(args.begin(), args.end());
        for (std::size_t i = 0; i + 1 < swapped.size(); ++i) {
            std::swap(swapped[i], swapped[i + 1]);
            PolyVector other = f.evaluate(swapped);
            if ((parity_of(*args[i]) & parity_of(*args[i + 1])) != 0) other = -other;
            std::swap(swapped[i], swapped[i + 1]);
            if (other != value) {
                report.equal = false;
                report.witness = Witness{copy_tuple(args), value, other};
                return false;
            }
        }
        return true;
    });
    return report;
}

} // namespace twistdef
