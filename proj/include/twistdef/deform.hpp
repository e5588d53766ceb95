#ifndef TWISTDEF_DEFORM_HPP
#define TWISTDEF_DEFORM_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <twistdef/twistcheck.hpp>

namespace twistdef {

/// Q[t]/t^{N+1}.
struct ArtinRing {
    int truncation = 1;

    explicit ArtinRing(int n);
    friend bool operator==(const ArtinRing &, const ArtinRing &) = default;
};

/// sum_{k=1..N} t^k c_k with multivector coefficients; no constant term.
class ArtinSeries {
public:
    ArtinSeries(std::size_t nvars, ArtinRing ring);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] const ArtinRing &ring() const { return ring_; }
    [[nodiscard]] int truncation() const { return ring_.truncation; }

    /// Coefficient of t^k, 1 <= k <= N (IndexError otherwise).
    [[nodiscard]] const PolyVector &coeff(int k) const;
    void set(int k, PolyVector v);

    /// Throws DegreeError unless every nonzero coefficient has degree d.
    void require_degree(int d, const char *what) const;

    friend bool operator==(const ArtinSeries &a, const ArtinSeries &b)
    {
        return a.nvars_ == b.nvars_ && a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::size_t nvars_;
    ArtinRing ring_;
    std::vector<PolyVector> coeffs_;
};

/// Gauge parameter: an ArtinSeries of vector fields.
class GaugeParam : public ArtinSeries {
public:
    GaugeParam(std::size_t nvars, ArtinRing ring) : ArtinSeries(nvars, ring) {}
    explicit GaugeParam(ArtinSeries s);
    void set(int k, PolyVector v);
};

/// Thrown by gauge_equivalent when an input does not solve the equation.
class NotMaurerCartan : public std::invalid_argument {
public:
    NotMaurerCartan(std::string which, int order);
    [[nodiscard]] int order() const { return order_; }

private:
    int order_;
};

/// Order k -> sum_{i+j=k}[pi_i,pi_j] - sum_{i+j+l=k} phi(H)(pi_i,pi_j,pi_l), for k = 1..N.
std::map<int, PolyVector> defect_series(const TwistedStructure &s, const ArtinSeries &pi);
bool defect_vanishes(const std::map<int, PolyVector> &defect);

enum class SolveStatus { Solved, Obstructed };

struct SolveReport {
    SolveStatus status = SolveStatus::Solved;
    /// Order of the first equation that could not be met (Obstructed only).
    int obstructed_order = 0;
    /// Remaining trivector at that order with the offending unknown set to zero.
    PolyVector residual;
    /// Full series when Solved; the orders fixed so far when Obstructed.
    ArtinSeries solution;
    unsigned poly_degree = 0;
    /// Number of terms of the defect at each order 1..N of the returned series.
    std::vector<std::size_t> residual_terms;
};

/// Extends pi1 order by order. pi_k is chosen from the bivector basis with
/// coefficient degree <= poly_degree so that the order-(k+1) equation
/// 2[pi_1, pi_k] = -(known part) holds; the order-2 equation [pi_1,pi_1] = 0
/// is checked first. No backtracking.
SolveReport mc_solve(const TwistedStructure &s, const PolyVector &pi1, int truncation, unsigned poly_degree);

/// Integrates d(gamma)/ds = -([xi, gamma] + (3/2) phi(H)(xi, gamma, gamma))
/// from s = 0 to 1, exactly, order by order in t.
ArtinSeries gauge_flow(const TwistedStructure &s, const ArtinSeries &gamma, const GaugeParam &xi);

struct GaugeResult {
    bool equivalent = false;
    std::optional<GaugeParam> witness;
    /// First order at which no gauge parameter within bounds matches (0 when equivalent).
    int failed_order = 0;
    PolyVector residual;
};

/// Searches xi_1..xi_{N-1} within the vector-field basis of coefficient
/// degree <= poly_degree, order by order. At order k+1 the unknowns are xi_k
/// and a correction of xi_{k-1} by fields commuting with gamma_1; both enter
/// that order affinely. false means no witness was found within bounds.
/// Throws NotMaurerCartan if either input has a nonzero defect.
GaugeResult gauge_equivalent(const TwistedStructure &s, const ArtinSeries &g1, const ArtinSeries &g2, unsigned poly_degree);

} // namespace twistdef

#endif
