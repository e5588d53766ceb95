#ifndef TWISTDEF_MULTIVECTOR_HPP
#define TWISTDEF_MULTIVECTOR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <twistdef/frame.hpp>
#include <twistdef/polynomial.hpp>

namespace twistdef {

namespace detail {

struct MultivectorTag {
    static constexpr const char *symbol = "D";
};
struct FormTag {
    static constexpr const char *symbol = "d";
};

/// Finite sum of polynomial multiples of exterior monomials in n odd
/// generators. Instantiated once for multivector fields (generators d/dx_i)
/// and once for differential forms (generators dx_i); the two are distinct
/// types and never mix.
template <class Tag>
class FrameSum {
public:
    using Term = std::pair<Frame, Polynomial>;

    FrameSum() = default;
    explicit FrameSum(std::size_t nvars) : nvars_(nvars) {}
    FrameSum(std::size_t nvars, std::vector<Term> terms);

    /// Degree-0 element f.
    static FrameSum scalar(Polynomial f);
    static FrameSum monomial(std::size_t nvars, Frame frame, Polynomial coeff);
    /// The generator with index i (d/dx_i or dx_i).
    static FrameSum generator(std::size_t nvars, std::size_t i);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::vector<Term> &terms() const { return terms_; }

    /// Homogeneous degree; nullopt when zero or mixed.
    [[nodiscard]] std::optional<int> degree() const;
    [[nodiscard]] bool is_homogeneous() const { return terms_.empty() || degree().has_value(); }
    [[nodiscard]] FrameSum component(int k) const;
    /// Degrees present, ascending.
    [[nodiscard]] std::vector<int> degrees() const;
    [[nodiscard]] Polynomial coefficient(Frame f) const;
    /// Highest coefficient degree over all terms; -1 when zero.
    [[nodiscard]] int coefficient_degree() const;

    FrameSum &operator+=(const FrameSum &o);
    FrameSum &operator-=(const FrameSum &o);
    FrameSum &operator*=(const Rational &c);
    FrameSum operator-() const;

    friend FrameSum operator+(FrameSum a, const FrameSum &b) { return a += b; }
    friend FrameSum operator-(FrameSum a, const FrameSum &b) { return a -= b; }
    friend FrameSum operator*(FrameSum a, const Rational &c) { return a *= c; }
    friend FrameSum operator*(const Rational &c, FrameSum a) { return a *= c; }
    /// Multiplication by a function.
    friend FrameSum operator*(const Polynomial &f, const FrameSum &a) { return a.times(f); }
    friend bool operator==(const FrameSum &a, const FrameSum &b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    [[nodiscard]] FrameSum times(const Polynomial &f) const;
    [[nodiscard]] std::string to_string(const VarContext &ctx) const;

    /// Assembles from unsorted terms with possible repeats (canonicalises).
    static FrameSum from_unsorted(std::size_t nvars, std::vector<Term> terms);

private:
    void check_context(const FrameSum &o) const;

    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

} // namespace detail

/// Multivector field: element of the exterior algebra over polynomials on
/// the coordinate vector fields. |pi| = k for pi built from k-frames.
using PolyVector = detail::FrameSum<detail::MultivectorTag>;
/// Differential form with polynomial coefficients.
using DiffForm = detail::FrameSum<detail::FormTag>;

PolyVector wedge(const PolyVector &a, const PolyVector &b);
DiffForm wedge(const DiffForm &a, const DiffForm &b);

/// Schouten-Nijenhuis bracket. Conventions: [X, f] = X(f), [X, Y] is the
/// Lie bracket of vector fields, degree |a| + |b| - 1.
PolyVector schouten(const PolyVector &a, const PolyVector &b);

/// Left derivative by the i-th odd generator: removes d/dx_i with sign
/// (-1)^{number of generators before it}.
PolyVector odd_derivative(const PolyVector &a, std::size_t i);

DiffForm d_form(const DiffForm &w);

/// <alpha, X1 ^ ... ^ Xk> = sum_i (-1)^{i-1} alpha(X_i) X1 ^ ..^Xi-hat^.. ^ Xk.
/// Throws DegreeError unless alpha is a homogeneous one-form.
PolyVector contract(const DiffForm &alpha, const PolyVector &pi);

/// Adjoint action of a function: i_a(pi) = [pi, a].
PolyVector i_func_mv(const Polynomial &a, const PolyVector &pi);

/// Canonical basis {monomial * frame}: monomial degree <= poly_degree,
/// frame size <= mv_degree. Ordered by frame size, frame, then monomial.
std::vector<PolyVector> multivector_basis(std::size_t nvars, unsigned poly_degree, int mv_degree);
std::vector<DiffForm> form_basis(std::size_t nvars, unsigned poly_degree, int min_form_degree, int max_form_degree);

} // namespace twistdef

#endif
