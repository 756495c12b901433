#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace offsetdeg {

// Malformed expression text or surface file.  position() is the 1-based
// offset of the offending character in the input line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// The surface violates an assumption of the degree computation
// (sphere, identically zero hodograph).
class AssumptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The auxiliary system does not satisfy the hypotheses under which the
// generalized resultant computes the offset degree.
class InapplicableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal exactness or consistency check failed.  Always a bug in this
// library, never a property of the input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace offsetdeg
