#ifndef TWISTDEF_HOCHSCHILD_HPP
#define TWISTDEF_HOCHSCHILD_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <twistdef/multivector.hpp>

namespace twistdef {

/// Lexicographic order on order tuples, slot by slot.
struct OrdersLess {
    bool operator()(const std::vector<Monomial> &a, const std::vector<Monomial> &b) const;
};

/// Hochschild k-cochain D(a_1..a_k) = sum coeff * d^{o_1}(a_1) ... d^{o_k}(a_k),
/// where each o_j is a multi-index (stored as a Monomial of exponents).
/// Arity 0 cochains are functions.
class MultiDiffOp {
public:
    using Orders = std::vector<Monomial>;
    using TermMap = std::map<Orders, Polynomial, OrdersLess>;

    MultiDiffOp() = default;
    MultiDiffOp(std::size_t nvars, int arity);

    static MultiDiffOp function(const Polynomial &f);
    static MultiDiffOp term(const Polynomial &coeff, Orders orders);
    static MultiDiffOp identity(std::size_t nvars);
    static MultiDiffOp multiplication(std::size_t nvars);
    /// The 1-cochain f * d/dx_i.
    static MultiDiffOp derivation(std::size_t nvars, std::size_t i, const Polynomial &f);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] int arity() const { return arity_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const TermMap &terms() const { return terms_; }
    /// Largest order in a single slot, max_j |o_j|, over terms; -1 when zero.
    [[nodiscard]] int order() const;
    /// Largest total order sum_j |o_j| over terms; -1 when zero.
    [[nodiscard]] int total_order() const;
    /// Largest coefficient degree; -1 when zero.
    [[nodiscard]] int coefficient_degree() const;

    void add_term(const Orders &orders, const Polynomial &coeff);

    MultiDiffOp &operator+=(const MultiDiffOp &o);
    MultiDiffOp &operator-=(const MultiDiffOp &o);
    MultiDiffOp &operator*=(const Rational &c);
    MultiDiffOp operator-() const;
    friend MultiDiffOp operator+(MultiDiffOp a, const MultiDiffOp &b) { return a += b; }
    friend MultiDiffOp operator-(MultiDiffOp a, const MultiDiffOp &b) { return a -= b; }
    friend MultiDiffOp operator*(MultiDiffOp a, const Rational &c) { return a *= c; }
    friend MultiDiffOp operator*(const Rational &c, MultiDiffOp a) { return a *= c; }
    friend bool operator==(const MultiDiffOp &a, const MultiDiffOp &b);

    /// Applies the operator to polynomials.
    Polynomial operator()(std::span<const Polynomial> args) const;
    Polynomial operator()(std::initializer_list<Polynomial> args) const;

    [[nodiscard]] std::string to_string(const VarContext &ctx) const;

private:
    void check(const MultiDiffOp &o) const;

    std::size_t nvars_ = 0;
    int arity_ = 0;
    TermMap terms_;
};

/// (dD)(a_0..a_k) = a_0 D(a_1..) + sum_{i=1..k} (-1)^i D(.., a_{i-1} a_i, ..) + (-1)^{k+1} D(a_0..a_{k-1}) a_k.
MultiDiffOp hoch_delta(const MultiDiffOp &d);

/// D{E_1..E_m}: insertion into increasing slots of D. An insertion E_p whose
/// block ends with `after` inputs still to its right contributes (-1)^{(|E_p|-1) after}.
/// Throws std::invalid_argument when m exceeds the arity of D.
MultiDiffOp brace(const MultiDiffOp &d, std::span<const MultiDiffOp> args);
MultiDiffOp brace(const MultiDiffOp &d, std::initializer_list<MultiDiffOp> args);

/// [D, E] = D{E} - (-1)^{(|D|-1)(|E|-1)} E{D}.
MultiDiffOp gerstenhaber(const MultiDiffOp &d, const MultiDiffOp &e);

/// (D u E)(a_1..a_{k+l}) = D(a_1..a_k) E(a_{k+1}..a_{k+l}).
MultiDiffOp cup(const MultiDiffOp &d, const MultiDiffOp &e);

/// i_a D(a_1..a_{k-1}) = sum_{i=0}^{k-1} (-1)^i D(a_1..a_i, a, a_{i+1}..a_{k-1}); zero for k = 0.
MultiDiffOp i_func_hoch(const Polynomial &a, const MultiDiffOp &d);

/// Antisymmetrization with 1/k!: f d_{i_1}^...^d_{i_k} -> (1/k!) sum_s sgn(s) f d_{i_s(1)} x .. x d_{i_s(k)}.
/// Throws DegreeError unless pi is homogeneous (zero maps to the zero 0-cochain).
MultiDiffOp hkr(const PolyVector &pi);

struct PrimitiveBounds {
    unsigned poly_degree = 2;
    /// Bound on the order |o_j| in each slot.
    unsigned op_order = 2;
};

struct PrimitiveResult {
    bool found = false;
    std::optional<MultiDiffOp> primitive;
    /// Number of candidate basis cochains and the rank of their image under d.
    std::size_t unknowns = 0;
    std::size_t rank = 0;
    /// rank of [A | T]; rank + 1 certifies that no primitive exists within bounds.
    std::size_t augmented_rank = 0;
    /// The input when not found (nothing of it is reachable within bounds).
    MultiDiffOp residual;
};

/// Searches xi of arity k-1 with coefficient degree and slot order within
/// bounds such that hoch_delta(xi) = t exactly.
PrimitiveResult delta_primitive(const MultiDiffOp &t, const PrimitiveBounds &bounds = {});

/// All single-term cochains coeff * (o_1..o_k) of the given arity with
/// monomial coefficient of degree <= poly_degree and |o_j| <= op_order in every slot.
std::vector<MultiDiffOp> hoch_basis(std::size_t nvars, int arity, unsigned poly_degree, unsigned op_order);

} // namespace twistdef

#endif
