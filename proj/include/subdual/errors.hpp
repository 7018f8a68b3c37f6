#ifndef SUBDUAL_ERRORS_HPP
#define SUBDUAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subdual {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input text could not be parsed (bad rational literal, malformed file, ...).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Vector/matrix shapes do not line up.
class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

/// An operation that needs finite variable bounds met an infinite one.
class UnboundedDomain : public Error {
public:
    explicit UnboundedDomain(const std::string& what) : Error(what) {}
};

/// solve_lp was handed a model that still contains integer variables.
class NotRelaxed : public Error {
public:
    explicit NotRelaxed(const std::string& what) : Error(what) {}
};

/// Strict-inequality slack must be positive.
class BadEpsilon : public Error {
public:
    explicit BadEpsilon(const std::string& what) : Error(what) {}
};

/// Decoding requires an Optimal solution.
class StatusNotOptimal : public Error {
public:
    explicit StatusNotOptimal(const std::string& what) : Error(what) {}
};

/// Upper directional derivative is undefined in direction zero.
class ZeroDirection : public Error {
public:
    explicit ZeroDirection(const std::string& what) : Error(what) {}
};

/// Scalar-rhs dual machinery was handed a model with more than one row.
class MultiRow : public Error {
public:
    explicit MultiRow(const std::string& what) : Error(what) {}
};

/// Weak-duality bookkeeping requires a certified dual function and an
/// Optimal primal solution.
class NotCertified : public Error {
public:
    explicit NotCertified(const std::string& what) : Error(what) {}
};

} // namespace subdual

#endif // SUBDUAL_ERRORS_HPP
