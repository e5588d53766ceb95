#ifndef TWISTDEF_CHEVALLEY_HPP
#define TWISTDEF_CHEVALLEY_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <twistdef/multivector.hpp>

namespace twistdef {

/// Graded-symmetric multilinear map on multivector fields.
///
/// Arguments carry the parity |pi| mod 2 (the degree of pi after shifting by
/// two); swapping neighbours pi_i, pi_j multiplies the value by
/// (-1)^{|pi_i||pi_j|}. On a homogeneous tuple the value has multivector
/// degree sum|pi_j| + shift. The cochain degree used in brackets is
/// shift + 2 * arity - 2: 1 for the Schouten structure map, k - 2 for the
/// image of a k-form.
///
/// `order` bounds the total number of coordinate derivatives the map applies
/// to its arguments (-1 when unknown). It drives the completeness cap in
/// cochain_equal_on_basis.
class Cochain {
public:
    /// Argument list handed to evaluators: homogeneous, nonzero arguments only.
    using ArgList = std::span<const PolyVector *const>;
    using Evaluator = std::function<PolyVector(ArgList)>;

    Cochain(std::size_t nvars, int arity, int shift, int order, Evaluator eval, std::string label = {});
    static Cochain zero(std::size_t nvars, int arity, int shift = 0);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] int arity() const { return arity_; }
    [[nodiscard]] int shift() const { return shift_; }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] int degree() const { return shift_ + 2 * arity_ - 2; }
    [[nodiscard]] bool is_zero() const { return !eval_; }
    [[nodiscard]] const std::string &label() const { return label_; }

    /// Evaluates on arbitrary arguments by expanding each into homogeneous
    /// components. Throws std::invalid_argument on an arity mismatch.
    PolyVector operator()(std::span<const PolyVector> args) const;
    PolyVector operator()(std::initializer_list<PolyVector> args) const;
    /// Pointer-based evaluation; arguments may be zero or inhomogeneous.
    PolyVector evaluate(ArgList args) const;

    friend Cochain operator+(const Cochain &a, const Cochain &b);
    friend Cochain operator-(const Cochain &a, const Cochain &b);
    friend Cochain operator*(const Rational &c, const Cochain &a);

private:
    std::size_t nvars_ = 0;
    int arity_ = 0;
    int shift_ = 0;
    int order_ = 0;
    std::shared_ptr<const Evaluator> eval_;
    std::string label_;
};

/// Image of a differential form: a cochain remembering where it came from.
class PhiCochain : public Cochain {
public:
    PhiCochain(Cochain c, DiffForm source) : Cochain(std::move(c)), source_(std::move(source)) {}
    [[nodiscard]] const DiffForm &source_form() const { return source_; }

private:
    DiffForm source_;
};

/// Sign exponent of the k-ary contraction formula for argument degrees
/// |pi_1|..|pi_k|: sum_{j<k} (k-j)(|pi_j| - 1) + k(k-1)/2, i.e.
/// sum_j (k-j)|pi_j| mod 2.
int phi_sign_exponent(std::span<const int> degrees);

/// For a k-form w = sum g_I dx_I (k >= 1):
///   phi(w)(pi_1..pi_k) = (-1)^{phi_sign_exponent} sum_I g_I
///       sum_sigma sgn(sigma) <dx_{I_sigma(1)}, pi_1> ^ ... ^ <dx_{I_sigma(k)}, pi_k>.
/// For a 0-form, the arity-0 cochain returning w. Throws DegreeError when w
/// is not homogeneous; a zero form needs the explicit-degree overload.
PhiCochain phi(const DiffForm &w);
PhiCochain phi(const DiffForm &w, int degree);

/// m(pi, rho) = (-1)^{|pi|-1} [pi, rho].
Cochain structure_cochain(std::size_t nvars);

/// (F o G)(pi_1..pi_{k+l-1}) = sum over I |_| J, |I| = arity(G), of
/// eps(I,J) F(G(pi_I), pi_J), eps the Koszul sign of the unshuffle.
Cochain cochain_compose(const Cochain &f, const Cochain &g);
/// [F, G] = F o G - (-1)^{|F||G|} G o F.
Cochain cochain_bracket(const Cochain &f, const Cochain &g);
/// dF = [m, F].
Cochain cochain_differential(const Cochain &f);

struct BasisBounds {
    unsigned poly_degree = 2;
    int mv_degree = 3;
    /// Extra cap on the summed coefficient degree of a tuple.
    std::optional<unsigned> total_degree;
    /// When true (the default for graded-symmetric cochains) only
    /// nondecreasing index tuples of the canonical basis are visited.
    bool symmetric = true;
    /// When true the summed-degree cap is tightened to the larger
    /// differential order of the two cochains; enumeration stays complete
    /// for multidifferential maps of that total order.
    bool use_order_cap = true;
};

struct Witness {
    std::vector<PolyVector> tuple;
    PolyVector lhs;
    PolyVector rhs;
};

struct EqualityReport {
    bool equal = true;
    std::size_t tuples_checked = 0;
    std::optional<Witness> witness;
};

/// Compares a and b on every basis tuple within bounds; the first mismatch
/// (in enumeration order) is returned as the witness.
EqualityReport cochain_equal_on_basis(const Cochain &a, const Cochain &b, const BasisBounds &bounds = {});
/// Same as comparing against the zero cochain.
EqualityReport cochain_vanishes_on_basis(const Cochain &a, const BasisBounds &bounds = {});

/// Checks f(.., x, y, ..) = (-1)^{|x||y|} f(.., y, x, ..) for every ordered
/// basis tuple within bounds and every adjacent position.
EqualityReport graded_symmetry_check(const Cochain &f, const BasisBounds &bounds);

/// Visits basis tuples exactly as cochain_equal_on_basis does. The callback
/// returns false to stop. `shift` prunes tuples whose output degree lies
/// outside [0, nvars]; pass nullopt to disable pruning.
void for_each_basis_tuple(std::size_t nvars, int arity, const BasisBounds &bounds, std::optional<unsigned> degree_cap,
                          std::optional<int> shift,
                          const std::function<bool(Cochain::ArgList)> &visit);

} // namespace twistdef

#endif
