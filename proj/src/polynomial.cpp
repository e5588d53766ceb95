#include <twistdef/polynomial.hpp>

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <twistdef/errors.hpp>

namespace twistdef {

VarContext::VarContext(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.size() > max_vars) throw std::invalid_argument("too many variables (max " + std::to_string(max_vars) + ")");
    std::set<std::string> seen;
    for (const auto &n : names_) {
        if (n.empty()) throw std::invalid_argument("empty variable name");
        if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name '" + n + "'");
    }
}

VarContext VarContext::numbered(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return VarContext(std::move(names));
}

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint16_t>(nvars))
{
    if (nvars > max_vars) throw std::invalid_argument("too many variables");
}

Monomial::Monomial(std::size_t nvars, std::span<const unsigned> exps) : Monomial(nvars)
{
    if (exps.size() != nvars) throw std::invalid_argument("exponent vector length does not match context");
    for (std::size_t i = 0; i < nvars; ++i) {
        if (exps[i] > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("exponent too large");
        exps_[i] = static_cast<std::uint16_t>(exps[i]);
        degree_ += exps[i];
    }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i)
{
    if (i >= nvars) throw IndexError("variable index " + std::to_string(i) + " out of range");
    Monomial m(nvars);
    m.exps_[i] = 1;
    m.degree_ = 1;
    return m;
}

std::vector<unsigned> Monomial::exponents() const
{
    return {exps_.begin(), exps_.begin() + nvars_};
}

Monomial operator*(const Monomial &a, const Monomial &b)
{
    if (a.nvars_ != b.nvars_) throw ContextMismatch(a.nvars_, b.nvars_);
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
        const unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
        if (e > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("exponent overflow");
        r.exps_[i] = static_cast<std::uint16_t>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

Monomial Monomial::lowered(std::size_t i) const
{
    Monomial r = *this;
    --r.exps_[i];
    --r.degree_;
    return r;
}

Monomial Monomial::raised(std::size_t i, unsigned by) const
{
    Monomial r = *this;
    if (unsigned{r.exps_[i]} + by > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("exponent overflow");
    r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] + by);
    r.degree_ += by;
    return r;
}

bool Monomial::divisible_by(const Monomial &o) const
{
    for (std::size_t i = 0; i < nvars_; ++i)
        if (exps_[i] < o.exps_[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial &o) const
{
    Monomial r = *this;
    for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] - o.exps_[i]);
    r.degree_ -= o.degree_;
    return r;
}

bool operator<(const Monomial &a, const Monomial &b)
{
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    for (std::size_t i = 0; i < a.nvars_; ++i)
        if (a.exps_[i] != b.exps_[i]) return a.exps_[i] > b.exps_[i];
    return false;
}

Polynomial::Polynomial(std::size_t nvars, Rational c) : nvars_(nvars)
{
    if (!c.is_zero()) terms_.emplace_back(Monomial(nvars), std::move(c));
}

Polynomial::Polynomial(const Monomial &m, Rational c) : nvars_(m.nvars())
{
    if (!c.is_zero()) terms_.emplace_back(m, std::move(c));
}

Polynomial::Polynomial(std::size_t nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms))
{
    for (const auto &t : terms_)
        if (t.first.nvars() != nvars_) throw ContextMismatch(nvars_, t.first.nvars());
    canonicalize();
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i)
{
    return Polynomial(Monomial::variable(nvars, i), Rational(1));
}

void Polynomial::canonicalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto &t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            if (!out.empty() && out.back().second.is_zero()) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    terms_ = std::move(out);
}

int Polynomial::degree() const
{
    return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree());
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.degree() == 0);
}

Rational Polynomial::coefficient(const Monomial &m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term &t, const Monomial &k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
}

void Polynomial::check_context(const Polynomial &o) const
{
    if (nvars_ != o.nvars_) throw ContextMismatch(nvars_, o.nvars_);
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
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
        if (a->first < b->first) {
            out.push_back(std::move(*a++));
        } else if (b->first < a->first) {
            out.push_back(*b++);
        } else {
            Rational c = std::move(a->second);
            c += b->second;
            if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
    for (; b != o.terms_.end(); ++b) out.push_back(*b);
    terms_ = std::move(out);
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
    return *this += -o;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) t.second *= c;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto &t : r.terms_) t.second = -t.second;
    return r;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    a.check_context(b);
    if (a.terms_.empty() || b.terms_.empty()) return Polynomial(a.nvars_);
    if (b.terms_.size() == 1 && b.terms_.front().first.degree() == 0) return a * b.terms_.front().second;
    if (a.terms_.size() == 1 && a.terms_.front().first.degree() == 0) return b * a.terms_.front().second;
    std::vector<Polynomial::Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) prods.emplace_back(ma * mb, ca * cb);
    Polynomial r(a.nvars_);
    r.terms_ = std::move(prods);
    if (a.terms_.size() > 1 && b.terms_.size() > 1) {
        r.canonicalize();
    }
    // With a single-term factor the products are already sorted and distinct:
    // multiplying by a fixed monomial preserves the graded order.
    return r;
}

Polynomial Polynomial::derivative(std::size_t i) const
{
    if (i >= nvars_) throw IndexError("variable index " + std::to_string(i) + " out of range for " + std::to_string(nvars_) + " variables");
    Polynomial r(nvars_);
    for (const auto &[m, c] : terms_) {
        const unsigned e = m[i];
        if (e == 0) continue;
        r.terms_.emplace_back(m.lowered(i), c * Rational(static_cast<std::int64_t>(e)));
    }
    // Lowering one exponent is not monotone across different monomials in
    // general, so re-sort.
    r.canonicalize();
    return r;
}

Polynomial Polynomial::derivative(const Monomial &order) const
{
    Polynomial r = *this;
    for (std::size_t i = 0; i < order.nvars() && !r.is_zero(); ++i)
        for (unsigned k = 0; k < order[i] && !r.is_zero(); ++k) r = r.derivative(i);
    return r;
}

std::string Polynomial::to_string(const VarContext &ctx) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        std::string cs = c.to_string();
        const bool neg = c.sign() < 0;
        if (neg) cs.erase(0, 1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        const bool unit = cs == "1";
        if (!unit || m.degree() == 0) os << cs;
        bool star = !unit;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (star) os << "*";
            star = true;
            os << ctx.name(i);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

Polynomial poly_arith(PolyOp op, const Polynomial &p, const Polynomial &q)
{
    switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::mul: return p * q;
    case PolyOp::scale:
        if (!q.is_constant()) throw std::invalid_argument("scale expects a constant factor");
        if (p.nvars() != q.nvars()) throw ContextMismatch(p.nvars(), q.nvars());
        return q.is_zero() ? Polynomial(p.nvars()) : p * q.terms().front().second;
    }
    throw std::invalid_argument("unknown polynomial operation");
}

Polynomial poly_arith(PolyOp op, const Polynomial &p, const Rational &c)
{
    if (op == PolyOp::add) return p + Polynomial::constant(p.nvars(), c);
    return p * c;
}

Polynomial partial_derive(const Polynomial &p, std::size_t i)
{
    return p.derivative(i);
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree)
{
    std::vector<Monomial> out;
    std::vector<unsigned> exps(nvars, 0);
    // Enumerate exponent vectors of each total degree, then sort canonically.
    auto rec = [&](auto &&self, std::size_t i, unsigned remaining) -> void {
        if (i == nvars) {
            out.emplace_back(nvars, exps);
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            exps[i] = e;
            self(self, i + 1, remaining - e);
        }
        exps[i] = 0;
    };
    rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace twistdef
