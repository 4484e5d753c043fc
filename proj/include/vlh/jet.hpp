#ifndef VLH_JET_HPP
#define VLH_JET_HPP

#include "vlh/parampoly.hpp"

#include <map>
#include <optional>
#include <string>

namespace vlh {

// Hard ceiling on the jet order a differentiation is allowed to produce.
// Callers that know their genus budget tighten this locally; blowing past
// it means a computation is running away.
inline unsigned& jetCap() {
    static unsigned cap = 64;
    return cap;
}

// Monomial in the jet variables v = v_0, v_1 = v_x, v_2 = v_xx, ...
// Stored as jet index -> exponent, zero exponents never stored.
class JetMonomial {
public:
    using Exps = std::map<unsigned, unsigned>;

    JetMonomial() = default;
    explicit JetMonomial(Exps e);
    static JetMonomial var(unsigned jet, unsigned power = 1);

    // Differential degree: deg v_k = k.
    unsigned deg() const;
    // Degree ignoring one power of x-derivative per factor: deg v_k = k - 1
    // for k >= 1, and v_0 does not appear in the ring this grading lives on.
    int obarDeg() const;
    unsigned totalExp() const;
    unsigned maxJet() const; // 0 for the empty monomial
    unsigned exp(unsigned jet) const;
    bool empty() const { return exps_.empty(); }
    const Exps& exps() const { return exps_; }

    JetMonomial operator*(const JetMonomial& o) const;
    // Divide, or nullopt if some exponent would go negative.
    std::optional<JetMonomial> tryDivide(const JetMonomial& o) const;

    bool operator==(const JetMonomial& o) const { return exps_ == o.exps_; }
    // Graded order: (deg, totalExp, lex with higher jets weighing more).
    // Compatible with multiplication, so polynomial division terminates.
    bool operator<(const JetMonomial& o) const;

    std::string toString(const std::string& name = "v") const;

private:
    Exps exps_;
};

// Differential polynomial in one dependent variable and its x-jets, with
// ParamPoly coefficients.
class DiffPoly {
public:
    DiffPoly() = default;
    DiffPoly(long v) : DiffPoly(ParamPoly(v)) {}
    DiffPoly(const Rat& v) : DiffPoly(ParamPoly(v)) {}
    DiffPoly(const ParamPoly& c);
    DiffPoly(const JetMonomial& m, ParamPoly c = ParamPoly(1));
    static DiffPoly var(unsigned jet, unsigned power = 1);

    bool isZero() const { return terms_.empty(); }
    bool isConstantPoly() const; // no jet variables
    ParamPoly constantCoeff() const;
    bool coeffsConstant() const; // all coefficients parameter-free
    const std::map<JetMonomial, ParamPoly>& terms() const { return terms_; }
    ParamPoly coeff(const JetMonomial& m) const;

    unsigned maxJet() const;     // 0 if no jets present
    // Max/min differential degree over terms (0 for the zero polynomial).
    unsigned degMax() const;
    unsigned degMin() const;
    bool isHomogeneous(unsigned d) const;
    int obarDegMax() const;      // requires no bare v_0-only dependence? no: v_0 counts 0... see impl
    bool dependsOnJet(unsigned jet) const;

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly& operator*=(const DiffPoly& o) { *this = *this * o; return *this; }
    DiffPoly& operator*=(const ParamPoly& c);
    DiffPoly& operator*=(const Rat& c) { return (*this *= ParamPoly(c)); }
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { a += b; return a; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { a -= b; return a; }
    friend DiffPoly operator*(const ParamPoly& c, DiffPoly p) { p *= c; return p; }
    friend DiffPoly operator*(const Rat& c, DiffPoly p) { p *= c; return p; }
    DiffPoly pow(unsigned e) const;

    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }
    bool operator<(const DiffPoly& o) const { return terms_ < o.terms_; }

    // Total x-derivative: sum_k v_{k+1} d/dv_k.  Throws CutoffError if the
    // result would involve a jet beyond jetCap().
    DiffPoly dx() const;
    DiffPoly dxPow(unsigned n) const;
    // Formal partial d/dv_k.
    DiffPoly jetPartial(unsigned k) const;
    // Antiderivative in the single variable v_k of a v_k-free... no:
    // integral of this with respect to v_k (raises each exponent by one).
    DiffPoly antideriv(unsigned k) const;

    // Substitute v_0 -> value (value arbitrary; higher jets of the result
    // are NOT touched: this is the plain ring substitution used for shifts
    // like v_0 -> 1 + v_0).
    DiffPoly substituteJet0(const DiffPoly& value) const;
    // Substitute every jet variable: v_k -> images[k].  Plain ring hom.
    DiffPoly substituteAll(const std::map<unsigned, DiffPoly>& images) const;
    ParamPoly evalJets(const std::map<unsigned, Rat>& point) const;
    DiffPoly substParam(const std::string& name, const ParamPoly& value) const;

    // gcd of all coefficients (sign fixed so the leading coefficient is
    // positive).  Coefficients must be parameter-free; zero poly -> 0.
    Rat content() const;
    DiffPoly primitivePart() const;

    std::string toString(const std::string& name = "v") const;

private:
    void addTerm(const JetMonomial& m, const ParamPoly& c);
    std::map<JetMonomial, ParamPoly> terms_;
};

// Exact polynomial quotient a / b, or nullopt.  b's leading coefficient
// must be parameter-free.
std::optional<DiffPoly> tryExactDivide(const DiffPoly& a, const DiffPoly& b);

// Inverse of dx up to a constant of integration; requires the input to be
// a total x-derivative (zero constant term), else throws NotExactError.
DiffPoly integrateX(const DiffPoly& p);

// Euler operator sum_k (-dx)^k d/dv_k.
DiffPoly variationalDerivative(const DiffPoly& p);

// Derivative of f along the evolutionary flow v_t = flow:
// sum_k dx^k(flow) * df/dv_k.
DiffPoly tDerivativeAlong(const DiffPoly& flow, const DiffPoly& f);

} // namespace vlh

#endif
