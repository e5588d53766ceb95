#ifndef TWISTDEF_ERRORS_HPP
#define TWISTDEF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twistdef {

class ContextMismatch : public std::invalid_argument {
public:
    ContextMismatch(std::size_t a, std::size_t b)
        : std::invalid_argument("context mismatch: " + std::to_string(a) + " vs " + std::to_string(b) + " variables")
    {
    }
};

/// An argument had the wrong (form or multivector) degree for the operation.
class DegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

} // namespace twistdef

#endif
