#ifndef VLH_ERROR_HPP
#define VLH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vlh {

// Result would exceed the session jet cutoff K.
struct CutoffError : std::runtime_error {
    explicit CutoffError(const std::string& what) : std::runtime_error(what) {}
};

// Input is not in the image of d/dx (plus constants).
struct NotExactError : std::runtime_error {
    explicit NotExactError(const std::string& what) : std::runtime_error(what) {}
};

// An operation received input outside its supported class
// (e.g. a rational function where a differential polynomial is required).
struct UnsupportedInputError : std::runtime_error {
    explicit UnsupportedInputError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant of the algebra was violated (internal error:
// conventions or degree bookkeeping are wrong somewhere).
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// Substitution whose leading (genus-0) denominator vanishes identically.
struct SingularSubstitutionError : std::runtime_error {
    explicit SingularSubstitutionError(const std::string& what) : std::runtime_error(what) {}
};

// A linear solve failed to produce the solution shape the caller asserted
// (no solution, or non-unique where uniqueness is required).
struct SolveError : std::runtime_error {
    explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vlh

#endif
