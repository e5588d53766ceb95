#include <twistdef/multivector.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <twistdef/errors.hpp>

namespace twistdef {

std::vector<std::size_t> frame_indices(Frame f)
{
    std::vector<std::size_t> out;
    for (; f != 0; f &= f - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(f)));
    return out;
}

Frame frame_from_indices(const std::vector<std::size_t> &idx, std::size_t nvars)
{
    Frame f = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= nvars) throw std::invalid_argument("frame index " + std::to_string(idx[k]) + " out of range");
        if (k > 0 && idx[k] <= idx[k - 1]) throw std::invalid_argument("frame indices must be strictly increasing");
        f |= frame_bit(idx[k]);
    }
    return f;
}

std::vector<Frame> frames_up_to(std::size_t nvars, int max_size)
{
    std::vector<Frame> out;
    const Frame limit = Frame{1} << nvars;
    for (Frame f = 0; f < limit; ++f)
        if (frame_size(f) <= max_size) out.push_back(f);
    std::sort(out.begin(), out.end(), frame_less);
    return out;
}

namespace detail {

template <class Tag>
FrameSum<Tag>::FrameSum(std::size_t nvars, std::vector<Term> terms) : nvars_(nvars)
{
    *this = from_unsorted(nvars, std::move(terms));
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::from_unsorted(std::size_t nvars, std::vector<Term> terms)
{
    FrameSum r(nvars);
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return frame_less(a.first, b.first); });
    for (auto &t : terms) {
        if (t.second.nvars() != nvars) throw ContextMismatch(nvars, t.second.nvars());
        if ((t.first >> nvars) != 0) throw std::invalid_argument("frame index out of range");
        if (!r.terms_.empty() && r.terms_.back().first == t.first) {
            r.terms_.back().second += t.second;
        } else {
            if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
            r.terms_.push_back(std::move(t));
        }
    }
    if (!r.terms_.empty() && r.terms_.back().second.is_zero()) r.terms_.pop_back();
    return r;
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::scalar(Polynomial f)
{
    FrameSum r(f.nvars());
    if (!f.is_zero()) r.terms_.emplace_back(Frame{0}, std::move(f));
    return r;
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::monomial(std::size_t nvars, Frame frame, Polynomial coeff)
{
    if (coeff.nvars() != nvars) throw ContextMismatch(nvars, coeff.nvars());
    if ((frame >> nvars) != 0) throw std::invalid_argument("frame index out of range");
    FrameSum r(nvars);
    if (!coeff.is_zero()) r.terms_.emplace_back(frame, std::move(coeff));
    return r;
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::generator(std::size_t nvars, std::size_t i)
{
    if (i >= nvars) throw IndexError("generator index out of range");
    return monomial(nvars, frame_bit(i), Polynomial::constant(nvars, 1));
}

template <class Tag>
std::optional<int> FrameSum<Tag>::degree() const
{
    if (terms_.empty()) return std::nullopt;
    const int k = frame_size(terms_.front().first);
    // Terms are sorted by frame size, so homogeneity is a front/back check.
    if (frame_size(terms_.back().first) != k) return std::nullopt;
    return k;
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::component(int k) const
{
    FrameSum r(nvars_);
    for (const auto &t : terms_)
        if (frame_size(t.first) == k) r.terms_.push_back(t);
    return r;
}

template <class Tag>
std::vector<int> FrameSum<Tag>::degrees() const
{
    std::vector<int> out;
    for (const auto &t : terms_) {
        const int k = frame_size(t.first);
        if (out.empty() || out.back() != k) out.push_back(k);
    }
    return out;
}

template <class Tag>
Polynomial FrameSum<Tag>::coefficient(Frame f) const
{
    for (const auto &t : terms_)
        if (t.first == f) return t.second;
    return Polynomial(nvars_);
}

template <class Tag>
int FrameSum<Tag>::coefficient_degree() const
{
    int d = -1;
    for (const auto &t : terms_) d = std::max(d, t.second.degree());
    return d;
}

template <class Tag>
void FrameSum<Tag>::check_context(const FrameSum &o) const
{
    if (nvars_ != o.nvars_) throw ContextMismatch(nvars_, o.nvars_);
}

template <class Tag>
FrameSum<Tag> &FrameSum<Tag>::operator+=(const FrameSum &o)
{
    check_context(o);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (frame_less(a->first, b->first)) {
            out.push_back(std::move(*a++));
        } else if (frame_less(b->first, a->first)) {
            out.push_back(*b++);
        } else {
            Polynomial s = std::move(a->second);
            s += b->second;
            if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
    for (; b != o.terms_.end(); ++b) out.push_back(*b);
    terms_ = std::move(out);
    return *this;
}

template <class Tag>
FrameSum<Tag> &FrameSum<Tag>::operator-=(const FrameSum &o)
{
    return *this += -o;
}

template <class Tag>
FrameSum<Tag> &FrameSum<Tag>::operator*=(const Rational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) t.second *= c;
    return *this;
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::operator-() const
{
    FrameSum r = *this;
    for (auto &t : r.terms_) t.second = -t.second;
    return r;
}

template <class Tag>
FrameSum<Tag> FrameSum<Tag>::times(const Polynomial &f) const
{
    if (f.nvars() != nvars_) throw ContextMismatch(nvars_, f.nvars());
    FrameSum r(nvars_);
    if (f.is_zero()) return r;
    for (const auto &t : terms_) r.terms_.emplace_back(t.first, t.second * f);
    return r;
}

template <class Tag>
std::string FrameSum<Tag>::to_string(const VarContext &ctx) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[f, p] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.to_string(ctx) << ")";
        if (f != 0) {
            os << " " << Tag::symbol << "[";
            bool sep = false;
            for (std::size_t i : frame_indices(f)) {
                if (sep) os << ",";
                sep = true;
                os << ctx.name(i);
            }
            os << "]";
        }
    }
    return os.str();
}

template class FrameSum<MultivectorTag>;
template class FrameSum<FormTag>;

template <class Tag>
FrameSum<Tag> wedge_impl(const FrameSum<Tag> &a, const FrameSum<Tag> &b)
{
    if (a.nvars() != b.nvars()) throw ContextMismatch(a.nvars(), b.nvars());
    std::vector<typename FrameSum<Tag>::Term> out;
    for (const auto &[fa, pa] : a.terms())
        for (const auto &[fb, pb] : b.terms()) {
            if (fa & fb) continue;
            Polynomial c = pa * pb;
            if (wedge_parity(fa, fb)) c = -c;
            out.emplace_back(fa | fb, std::move(c));
        }
    return FrameSum<Tag>::from_unsorted(a.nvars(), std::move(out));
}

} // namespace detail

PolyVector wedge(const PolyVector &a, const PolyVector &b)
{
    return detail::wedge_impl(a, b);
}

DiffForm wedge(const DiffForm &a, const DiffForm &b)
{
    return detail::wedge_impl(a, b);
}

PolyVector odd_derivative(const PolyVector &a, std::size_t i)
{
    if (i >= a.nvars()) throw IndexError("generator index out of range");
    std::vector<PolyVector::Term> out;
    for (const auto &[f, p] : a.terms()) {
        if (!frame_has(f, i)) continue;
        out.emplace_back(f & ~frame_bit(i), (count_below(f, i) & 1) ? -p : p);
    }
    return PolyVector::from_unsorted(a.nvars(), std::move(out));
}

PolyVector schouten(const PolyVector &a, const PolyVector &b)
{
    if (a.nvars() != b.nvars()) throw ContextMismatch(a.nvars(), b.nvars());
    std::vector<PolyVector::Term> out;
    // [P, Q] = sum_i (P d<-/d xi_i)(d Q/dx_i) - (d P/dx_i)(d->/d xi_i Q)
    for (const auto &[fa, pa] : a.terms())
        for (const auto &[fb, pb] : b.terms()) {
            for (Frame rest = fa; rest != 0; rest &= rest - 1) {
                const auto i = static_cast<std::size_t>(std::countr_zero(rest));
                const Frame fa_i = fa & ~frame_bit(i);
                if (fa_i & fb) continue;
                Polynomial db = pb.derivative(i);
                if (db.is_zero()) continue;
                Polynomial c = pa * db;
                const int parity = (count_above(fa, i) & 1) ^ wedge_parity(fa_i, fb);
                out.emplace_back(fa_i | fb, parity ? -c : c);
            }
            for (Frame rest = fb; rest != 0; rest &= rest - 1) {
                const auto i = static_cast<std::size_t>(std::countr_zero(rest));
                const Frame fb_i = fb & ~frame_bit(i);
                if (fa & fb_i) continue;
                Polynomial da = pa.derivative(i);
                if (da.is_zero()) continue;
                Polynomial c = da * pb;
                // leading minus sign folded into the parity
                const int parity = 1 ^ (count_below(fb, i) & 1) ^ wedge_parity(fa, fb_i);
                out.emplace_back(fa | fb_i, parity ? -c : c);
            }
        }
    return PolyVector::from_unsorted(a.nvars(), std::move(out));
}

DiffForm d_form(const DiffForm &w)
{
    const std::size_t n = w.nvars();
    std::vector<DiffForm::Term> out;
    for (const auto &[f, p] : w.terms())
        for (std::size_t i = 0; i < n; ++i) {
            if (frame_has(f, i)) continue;
            Polynomial dp = p.derivative(i);
            if (dp.is_zero()) continue;
            out.emplace_back(f | frame_bit(i), (count_below(f, i) & 1) ? -dp : dp);
        }
    return DiffForm::from_unsorted(n, std::move(out));
}

PolyVector contract(const DiffForm &alpha, const PolyVector &pi)
{
    if (alpha.nvars() != pi.nvars()) throw ContextMismatch(alpha.nvars(), pi.nvars());
    if (!alpha.is_zero() && alpha.degree() != 1) throw DegreeError("contract expects a one-form");
    PolyVector r(pi.nvars());
    for (const auto &[f, p] : alpha.terms()) {
        const auto i = static_cast<std::size_t>(std::countr_zero(f));
        r += odd_derivative(pi, i).times(p);
    }
    return r;
}

PolyVector i_func_mv(const Polynomial &a, const PolyVector &pi)
{
    return schouten(pi, PolyVector::scalar(a));
}

std::vector<PolyVector> multivector_basis(std::size_t nvars, unsigned poly_degree, int mv_degree)
{
    std::vector<PolyVector> out;
    const auto monos = monomials_up_to(nvars, poly_degree);
    for (Frame f : frames_up_to(nvars, mv_degree))
        for (const auto &m : monos) out.push_back(PolyVector::monomial(nvars, f, Polynomial(m, 1)));
    return out;
}

std::vector<DiffForm> form_basis(std::size_t nvars, unsigned poly_degree, int min_form_degree, int max_form_degree)
{
    std::vector<DiffForm> out;
    const auto monos = monomials_up_to(nvars, poly_degree);
    for (Frame f : frames_up_to(nvars, max_form_degree)) {
        if (frame_size(f) < min_form_degree) continue;
        for (const auto &m : monos) out.push_back(DiffForm::monomial(nvars, f, Polynomial(m, 1)));
    }
    return out;
}

} // namespace twistdef
