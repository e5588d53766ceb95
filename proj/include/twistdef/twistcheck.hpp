#ifndef TWISTDEF_TWISTCHECK_HPP
#define TWISTDEF_TWISTCHECK_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <twistdef/chevalley.hpp>

namespace twistdef {

/// Thrown by make_twisted when the 3-form is not closed; carries dH.
class NotClosed : public std::domain_error {
public:
    explicit NotClosed(DiffForm dH);
    [[nodiscard]] const DiffForm &dH() const { return dH_; }

private:
    DiffForm dH_;
};

/// L-infinity structure with l1 = 0, l2 = m, l3 = phi(H), nothing above.
struct TwistedStructure {
    std::size_t nvars = 0;
    DiffForm H;
    Cochain l2;
    PhiCochain l3;
};

/// Throws DegreeError unless H is zero or a 3-form, NotClosed when dH != 0.
TwistedStructure make_twisted(const DiffForm &H);

/// [pi, pi] - phi(H)(pi, pi, pi). Throws DegreeError unless pi is a bivector (or zero).
PolyVector mc_defect(const TwistedStructure &s, const PolyVector &pi);
bool is_twisted_poisson(const TwistedStructure &s, const PolyVector &pi);

struct RelationResult {
    std::string name;
    EqualityReport report;
};

struct LinftyReport {
    bool passed = true;
    std::vector<RelationResult> relations;
};

/// Evaluates [l2,l2], [l2,l3] and [l3,l3] on basis tuples; all three vanish
/// exactly when m + l3 is a Maurer-Cartan element of the cochain algebra.
LinftyReport linfty_relations_check(const Cochain &l2, const Cochain &l3, const BasisBounds &bounds = {});

} // namespace twistdef

#endif
