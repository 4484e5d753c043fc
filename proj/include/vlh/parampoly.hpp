#ifndef VLH_PARAMPOLY_HPP
#define VLH_PARAMPOLY_HPP

#include "vlh/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace vlh {

// Polynomial in formal coupling parameters ("s", "s1", "c17", ...) with
// exact rational coefficients.  These appear as scalars throughout the
// deformation machinery, so the representation is deliberately simple:
// a sparse map from exponent vectors to nonzero coefficients.
class ParamPoly {
public:
    using Mono = std::map<std::string, unsigned>;

    ParamPoly() = default;
    ParamPoly(long v) { if (v != 0) terms_[Mono{}] = ratFrom(v); }
    ParamPoly(const Rat& v) { if (v != 0) terms_[Mono{}] = v; }
    static ParamPoly param(const std::string& name, unsigned power = 1);

    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    // Constant term (valid for any polynomial).
    Rat constantTerm() const;
    // Requires isConstant().
    Rat asConstant() const;

    ParamPoly operator-() const;
    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly& operator*=(const ParamPoly& o) { *this = *this * o; return *this; }
    ParamPoly& operator*=(const Rat& c);
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { a += b; return a; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { a -= b; return a; }
    friend ParamPoly operator*(const Rat& c, ParamPoly p) { p *= c; return p; }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }
    bool operator<(const ParamPoly& o) const { return terms_ < o.terms_; }

    // Substitute one parameter by a polynomial (e.g. s -> s1 + s2, or s -> 3/2).
    ParamPoly substParam(const std::string& name, const ParamPoly& value) const;

    // Total degree in the given parameter; 0 if absent.
    unsigned degreeIn(const std::string& name) const;
    std::vector<std::string> paramNames() const;

    std::string toString() const;
    const std::map<Mono, Rat>& terms() const { return terms_; }

private:
    void add(const Mono& m, const Rat& c);
    std::map<Mono, Rat> terms_;
};

} // namespace vlh

#endif
