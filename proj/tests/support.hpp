// Small builders shared by the unit tests.
#pragma once

#include <initializer_list>
#include <vector>

#include <twistdef/multivector.hpp>

namespace tsupport {

using namespace twistdef;

inline Polynomial C(std::size_t n, long long p, long long q = 1)
{
    return Polynomial::constant(n, Rational(p, q));
}

inline Polynomial X(std::size_t n, std::size_t i)
{
    return Polynomial::variable(n, i);
}

/// Monomial x^e with an explicit exponent list.
inline Polynomial mono(std::size_t n, std::initializer_list<unsigned> e, long long p = 1, long long q = 1)
{
    std::vector<unsigned> ex(e);
    ex.resize(n, 0);
    return Polynomial(Monomial(n, ex), Rational(p, q));
}

inline PolyVector D(std::size_t n, std::initializer_list<std::size_t> idx, const Polynomial &f)
{
    return PolyVector::monomial(n, frame_from_indices(std::vector<std::size_t>(idx), n), f);
}

inline PolyVector D(std::size_t n, std::initializer_list<std::size_t> idx)
{
    return D(n, idx, C(n, 1));
}

inline DiffForm dx(std::size_t n, std::initializer_list<std::size_t> idx, const Polynomial &f)
{
    return DiffForm::monomial(n, frame_from_indices(std::vector<std::size_t>(idx), n), f);
}

inline DiffForm dx(std::size_t n, std::initializer_list<std::size_t> idx)
{
    return dx(n, idx, C(n, 1));
}

} // namespace tsupport
