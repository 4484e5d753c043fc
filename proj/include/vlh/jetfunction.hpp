#ifndef VLH_JETFUNCTION_HPP
#define VLH_JETFUNCTION_HPP

#include "vlh/jet.hpp"

#include <functional>
#include <map>
#include <string>

namespace vlh {

// Element of the localized jet ring: a differential polynomial divided by a
// product of (primitive, parameter-free) polynomial factors, plus an
// optional scalar multiple of log v_1.  Everything the genus expansion
// produces lives here -- denominators are powers of v_1 in practice, with
// v_0-type factors showing up after shifts of the dependent variable.
class JetFunction {
public:
    using Den = std::map<DiffPoly, unsigned>;
    using Images = std::function<JetFunction(unsigned)>;

    JetFunction() = default;
    JetFunction(long v) : num_(v) {}
    JetFunction(const Rat& v) : num_(v) {}
    JetFunction(const ParamPoly& c) : num_(c) {}
    JetFunction(DiffPoly p) : num_(std::move(p)) {}
    // num / prod factors^e
    JetFunction(DiffPoly num, const Den& den);
    static JetFunction reciprocal(const DiffPoly& f, unsigned power = 1);
    static JetFunction logV1(const ParamPoly& coeff);

    bool isZero() const { return num_.isZero() && log_.isZero(); }
    bool isScalar() const;     // parameter-polynomial constant
    bool isPolynomial() const { return den_.empty() && log_.isZero(); }
    bool hasLog() const { return !log_.isZero(); }
    const DiffPoly& num() const { return num_; }
    const Den& den() const { return den_; }
    const ParamPoly& logCoeff() const { return log_; }

    DiffPoly asDiffPoly() const;   // throws unless isPolynomial()
    ParamPoly asScalar() const;    // throws unless isScalar()

    JetFunction operator-() const;
    JetFunction& operator+=(const JetFunction& o);
    JetFunction& operator-=(const JetFunction& o) { return *this += -o; }
    JetFunction operator*(const JetFunction& o) const;
    JetFunction& operator*=(const JetFunction& o) { *this = *this * o; return *this; }
    JetFunction& operator*=(const ParamPoly& c);
    JetFunction& operator*=(const Rat& c) { return (*this *= ParamPoly(c)); }
    friend JetFunction operator+(JetFunction a, const JetFunction& b) { a += b; return a; }
    friend JetFunction operator-(JetFunction a, const JetFunction& b) { a -= b; return a; }
    friend JetFunction operator*(const ParamPoly& c, JetFunction f) { f *= c; return f; }
    friend JetFunction operator*(const Rat& c, JetFunction f) { f *= c; return f; }

    bool operator==(const JetFunction& o) const;
    bool operator!=(const JetFunction& o) const { return !(*this == o); }

    // Apply the derivation determined by jet images (missing images read as
    // zero via a null return contract: images must return a value for every
    // jet the function actually depends on; use {} for zero).
    JetFunction derivationApply(const Images& images) const;
    JetFunction dx() const;
    JetFunction dxPow(unsigned n) const;
    JetFunction jetPartial(unsigned k) const;

    unsigned maxJet() const;
    DiffPoly denProduct() const;
    JetFunction substParam(const std::string& name, const ParamPoly& value) const;

    // Value at v_0 = x with all higher jets required absent; throws if a
    // denominator factor vanishes there.
    ParamPoly evalAtJet0(const Rat& x) const;
    // j-th Taylor coefficient around v_0 = 0 of a function of v_0 alone.
    ParamPoly taylorCoeffAtJet0(unsigned j) const;

    std::string toString(const std::string& name = "v") const;

private:
    void insertFactor(DiffPoly f, unsigned e);
    void reduce();
    DiffPoly num_;
    Den den_;
    ParamPoly log_;
};

JetFunction tDerivativeAlong(const JetFunction& flow, const JetFunction& f);

} // namespace vlh

#endif
