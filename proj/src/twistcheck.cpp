#include <twistdef/twistcheck.hpp>

#include <twistdef/errors.hpp>

namespace twistdef {

NotClosed::NotClosed(DiffForm dH)
    : std::domain_error("3-form is not closed: dH = " + dH.to_string(VarContext::numbered(dH.nvars()))),
      dH_(std::move(dH))
{
}

TwistedStructure make_twisted(const DiffForm &H)
{
    if (!H.is_zero() && H.degree() != 3) throw DegreeError("the twist must be a 3-form");
    DiffForm dH = d_form(H);
    if (!dH.is_zero()) throw NotClosed(std::move(dH));
    return TwistedStructure{H.nvars(), H, structure_cochain(H.nvars()), phi(H, 3)};
}

PolyVector mc_defect(const TwistedStructure &s, const PolyVector &pi)
{
    if (pi.nvars() != s.nvars) throw ContextMismatch(s.nvars, pi.nvars());
    if (!pi.is_zero() && pi.degree() != 2) throw DegreeError("mc_defect expects a bivector");
    return schouten(pi, pi) - s.l3({pi, pi, pi});
}

bool is_twisted_poisson(const TwistedStructure &s, const PolyVector &pi)
{
    return mc_defect(s, pi).is_zero();
}

LinftyReport linfty_relations_check(const Cochain &l2, const Cochain &l3, const BasisBounds &bounds)
{
    if (l2.arity() != 2 || l3.arity() != 3) throw std::invalid_argument("linfty_relations_check expects arities 2 and 3");
    LinftyReport out;
    auto run = [&](std::string name, const Cochain &c) {
        RelationResult r{std::move(name), cochain_vanishes_on_basis(c, bounds)};
        out.passed = out.passed && r.report.equal;
        out.relations.push_back(std::move(r));
    };
    run("[l2,l2]", cochain_bracket(l2, l2));
    run("[l2,l3]", cochain_bracket(l2, l3));
    run("[l3,l3]", cochain_bracket(l3, l3));
    return out;
}

} // namespace twistdef
