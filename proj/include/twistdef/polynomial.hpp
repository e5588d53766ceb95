#ifndef TWISTDEF_POLYNOMIAL_HPP
#define TWISTDEF_POLYNOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <twistdef/rational.hpp>

namespace twistdef {

/// Hard cap on the number of coordinates. Frames are stored as 32-bit masks
/// and exponent vectors inline, which keeps the hot loops allocation-free.
inline constexpr std::size_t max_vars = 16;

/// Named coordinates of the affine chart.
class VarContext {
public:
    VarContext() = default;
    explicit VarContext(std::vector<std::string> names);
    /// Context with names x1..xn.
    static VarContext numbered(std::size_t n);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string> &names() const { return names_; }
    [[nodiscard]] const std::string &name(std::size_t i) const { return names_.at(i); }

    friend bool operator==(const VarContext &, const VarContext &) = default;

private:
    std::vector<std::string> names_;
};

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars);
    Monomial(std::size_t nvars, std::span<const unsigned> exps);
    static Monomial variable(std::size_t nvars, std::size_t i);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] unsigned degree() const { return degree_; }
    [[nodiscard]] unsigned operator[](std::size_t i) const { return exps_[i]; }
    [[nodiscard]] std::vector<unsigned> exponents() const;

    /// Product of monomials; throws std::overflow_error past 65535 per variable.
    friend Monomial operator*(const Monomial &a, const Monomial &b);
    /// Lowers exponent i by one; precondition exps[i] > 0.
    [[nodiscard]] Monomial lowered(std::size_t i) const;
    [[nodiscard]] Monomial raised(std::size_t i, unsigned by = 1) const;
    /// True when every exponent of *this is >= the matching exponent of o.
    [[nodiscard]] bool divisible_by(const Monomial &o) const;
    [[nodiscard]] Monomial quotient(const Monomial &o) const;

    friend bool operator==(const Monomial &a, const Monomial &b)
    {
        return a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
    }
    /// Graded order: total degree first, then exponents compared from the
    /// first variable with larger exponents first (x^2 < xy < y^2).
    friend bool operator<(const Monomial &a, const Monomial &b);

private:
    std::array<std::uint16_t, max_vars> exps_{};
    std::uint16_t nvars_ = 0;
    std::uint32_t degree_ = 0;
};

/// Sparse polynomial with rational coefficients in canonical form:
/// terms sorted by the graded monomial order, no zero coefficients.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    Polynomial(std::size_t nvars, Rational c);
    Polynomial(const Monomial &m, Rational c);
    /// Builds from arbitrary terms; merges duplicates and drops zeros.
    Polynomial(std::size_t nvars, std::vector<Term> terms);

    static Polynomial constant(std::size_t nvars, Rational c) { return Polynomial(nvars, std::move(c)); }
    static Polynomial variable(std::size_t nvars, std::size_t i);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::vector<Term> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    /// Total degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] Rational coefficient(const Monomial &m) const;

    Polynomial &operator+=(const Polynomial &o);
    Polynomial &operator-=(const Polynomial &o);
    Polynomial &operator*=(const Rational &c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
    friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Partial derivative in variable i; throws IndexError when i >= nvars.
    [[nodiscard]] Polynomial derivative(std::size_t i) const;
    /// Iterated derivative d^order with order given as an exponent vector.
    [[nodiscard]] Polynomial derivative(const Monomial &order) const;

    [[nodiscard]] std::string to_string(const VarContext &ctx) const;

private:
    void check_context(const Polynomial &o) const;
    void canonicalize();

    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

/// The three arithmetic operations exposed at the command line.
enum class PolyOp { add, mul, scale };
Polynomial poly_arith(PolyOp op, const Polynomial &p, const Polynomial &q);
Polynomial poly_arith(PolyOp op, const Polynomial &p, const Rational &c);
Polynomial partial_derive(const Polynomial &p, std::size_t i);

/// All monomials in nvars variables of total degree <= max_degree, in canonical order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree);

} // namespace twistdef

#endif
