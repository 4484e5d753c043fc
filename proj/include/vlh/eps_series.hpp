#ifndef VLH_EPS_SERIES_HPP
#define VLH_EPS_SERIES_HPP

#include "vlh/jetfunction.hpp"

#include <map>
#include <optional>

namespace vlh {

// Truncated power series in the dispersion parameter eps with JetFunction
// coefficients.  `cap` is inclusive: coefficients of eps^n for n <= cap are
// trusted, everything above is discarded.
class EpsSeries {
public:
    explicit EpsSeries(unsigned cap = 0) : cap_(cap) {}
    EpsSeries(JetFunction f, unsigned cap);
    static EpsSeries monomial(unsigned power, JetFunction f, unsigned cap);

    unsigned cap() const { return cap_; }
    bool isZero() const { return c_.empty(); }
    JetFunction coeff(unsigned n) const;
    void setCoeff(unsigned n, JetFunction f);
    // Smallest power with a nonzero coefficient.
    std::optional<unsigned> minOrder() const;
    const std::map<unsigned, JetFunction>& coeffs() const { return c_; }

    EpsSeries operator-() const;
    EpsSeries& operator+=(const EpsSeries& o);
    EpsSeries& operator-=(const EpsSeries& o);
    EpsSeries operator*(const EpsSeries& o) const;
    EpsSeries& operator*=(const EpsSeries& o) { *this = *this * o; return *this; }
    EpsSeries& operator*=(const JetFunction& f);
    EpsSeries& operator*=(const Rat& r);
    EpsSeries& operator*=(const ParamPoly& p);
    friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { a += b; return a; }
    friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { a -= b; return a; }

    // Multiply by eps^k (shifting coefficients up, dropping past the cap).
    EpsSeries shifted(unsigned k) const;
    EpsSeries truncated(unsigned newCap) const;
    EpsSeries dx() const;
    EpsSeries dxPow(unsigned n) const;
    EpsSeries substParam(const std::string& name, const ParamPoly& value) const;

    // Equality of coefficients through min(cap, o.cap).
    bool agreesWith(const EpsSeries& o) const;

    std::string toString(const std::string& name = "v") const;

private:
    void trim();
    std::map<unsigned, JetFunction> c_;
    unsigned cap_ = 0;
};

EpsSeries tDerivativeAlong(const EpsSeries& flow, const EpsSeries& f);

// Substitution w_k -> d^k/dx^k (base) for a change of dependent variable
// w = base(v; eps) with base = v + O(eps).  Handles rational functions by
// inverting each denominator factor as a geometric series, and log w_1 via
// the series for log(1 + u).  Caches jet images and factor inverses.
class JetSubstitution {
public:
    explicit JetSubstitution(EpsSeries base);

    unsigned cap() const { return base_.cap(); }
    const EpsSeries& image(unsigned k);
    EpsSeries apply(const JetFunction& f);
    EpsSeries apply(const EpsSeries& s);

private:
    const EpsSeries& inverseFactor(const DiffPoly& f);
    const EpsSeries& logImage();
    EpsSeries base_;
    std::vector<EpsSeries> images_;
    std::map<DiffPoly, EpsSeries> invCache_;
    std::optional<EpsSeries> logCache_;
};

} // namespace vlh

#endif
