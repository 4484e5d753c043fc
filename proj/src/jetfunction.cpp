#include "vlh/jetfunction.hpp"
#include "vlh/error.hpp"

#include <memory>
#include <sstream>
#include <vector>

namespace vlh {

JetFunction::JetFunction(DiffPoly num, const Den& den) : num_(std::move(num)) {
    for (const auto& [f, e] : den) insertFactor(f, e);
    reduce();
}

JetFunction JetFunction::reciprocal(const DiffPoly& f, unsigned power) {
    JetFunction out(DiffPoly(1));
    out.insertFactor(f, power);
    out.reduce();
    return out;
}

JetFunction JetFunction::logV1(const ParamPoly& coeff) {
    JetFunction out;
    out.log_ = coeff;
    return out;
}

void JetFunction::insertFactor(DiffPoly f, unsigned e) {
    if (e == 0) return;
    if (f.isZero())
        throw UnsupportedInputError("zero denominator factor");
    if (f.isConstantPoly()) {
        Rat c = f.constantCoeff().asConstant();
        num_ *= ratPow(Rat(1) / c, e);
        return;
    }
    Rat g = f.content();
    if (g != 1) {
        f *= Rat(1) / g;
        num_ *= ratPow(Rat(1) / g, e);
    }
    den_[f] += e;
}

void JetFunction::reduce() {
    if (num_.isZero()) { den_.clear(); return; }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = tryExactDivide(num_, it->first);
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
        }
        if (it->second == 0) it = den_.erase(it); else ++it;
    }
}

bool JetFunction::isScalar() const {
    return den_.empty() && log_.isZero() && num_.isConstantPoly();
}

DiffPoly JetFunction::asDiffPoly() const {
    if (!isPolynomial())
        throw UnsupportedInputError("not a differential polynomial: " + toString());
    return num_;
}

ParamPoly JetFunction::asScalar() const {
    if (!isScalar())
        throw UnsupportedInputError("not a scalar: " + toString());
    return num_.constantCoeff();
}

JetFunction JetFunction::operator-() const {
    JetFunction out = *this;
    out.num_ = -out.num_;
    out.log_ = -out.log_;
    return out;
}

JetFunction& JetFunction::operator+=(const JetFunction& o) {
    Den common = den_;
    for (const auto& [f, e] : o.den_) {
        auto it = common.find(f);
        if (it == common.end()) common.emplace(f, e);
        else it->second = std::max(it->second, e);
    }
    DiffPoly na = num_, nb = o.num_;
    for (const auto& [f, e] : common) {
        auto ia = den_.find(f);
        unsigned ea = ia == den_.end() ? 0 : ia->second;
        auto ib = o.den_.find(f);
        unsigned eb = ib == o.den_.end() ? 0 : ib->second;
        if (e > ea) na *= f.pow(e - ea);
        if (e > eb) nb *= f.pow(e - eb);
    }
    num_ = na + nb;
    den_ = std::move(common);
    log_ += o.log_;
    reduce();
    return *this;
}

JetFunction JetFunction::operator*(const JetFunction& o) const {
    if (hasLog() && o.hasLog())
        throw UnsupportedInputError("product of two logarithmic terms");
    if (hasLog() && !o.isScalar())
        throw UnsupportedInputError("logarithmic term times non-scalar");
    if (o.hasLog() && !isScalar())
        throw UnsupportedInputError("logarithmic term times non-scalar");
    JetFunction out;
    out.num_ = num_ * o.num_;
    out.den_ = den_;
    for (const auto& [f, e] : o.den_) out.den_[f] += e;
    if (hasLog()) out.log_ = log_ * o.asScalar();
    else if (o.hasLog()) out.log_ = o.log_ * asScalar();
    out.reduce();
    return out;
}

JetFunction& JetFunction::operator*=(const ParamPoly& c) {
    num_ *= c;
    log_ *= c;
    reduce();
    return *this;
}

bool JetFunction::operator==(const JetFunction& o) const {
    JetFunction d = *this;
    d += -o;
    return d.isZero();
}

JetFunction JetFunction::derivationApply(const Images& images) const {
    std::map<unsigned, JetFunction> cache;
    auto img = [&](unsigned k) -> const JetFunction& {
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, images(k)).first;
        return it->second;
    };
    auto dPoly = [&](const DiffPoly& p) {
        JetFunction out;
        unsigned mj = p.maxJet();
        for (unsigned k = 0; k <= mj; ++k) {
            DiffPoly pk = p.jetPartial(k);
            if (pk.isZero()) continue;
            const JetFunction& ik = img(k);
            if (ik.isZero()) continue;
            out += ik * JetFunction(pk);
        }
        return out;
    };
    JetFunction inv = den_.empty() ? JetFunction(DiffPoly(1)) : JetFunction(DiffPoly(1), den_);
    JetFunction out = dPoly(num_) * inv;
    for (const auto& [f, e] : den_) {
        JetFunction t = dPoly(f) * JetFunction(num_, den_) * reciprocal(f);
        t *= Rat(-(long)e);
        out += t;
    }
    if (hasLog()) {
        JetFunction t = img(1) * reciprocal(DiffPoly::var(1));
        t *= log_;
        out += t;
    }
    return out;
}

JetFunction JetFunction::dx() const {
    return derivationApply([](unsigned k) {
        if (k + 1 > jetCap())
            throw CutoffError("dx would produce jet order " + std::to_string(k + 1));
        return JetFunction(DiffPoly::var(k + 1));
    });
}

JetFunction JetFunction::dxPow(unsigned n) const {
    JetFunction out = *this;
    for (unsigned i = 0; i < n; ++i) out = out.dx();
    return out;
}

JetFunction JetFunction::jetPartial(unsigned k) const {
    return derivationApply([k](unsigned j) {
        return j == k ? JetFunction(DiffPoly(1)) : JetFunction();
    });
}

unsigned JetFunction::maxJet() const {
    unsigned mj = num_.maxJet();
    for (const auto& [f, e] : den_) mj = std::max(mj, f.maxJet());
    if (hasLog()) mj = std::max(mj, 1u);
    return mj;
}

DiffPoly JetFunction::denProduct() const {
    DiffPoly d(1);
    for (const auto& [f, e] : den_) d *= f.pow(e);
    return d;
}

JetFunction JetFunction::substParam(const std::string& name, const ParamPoly& value) const {
    JetFunction out = *this;
    out.num_ = out.num_.substParam(name, value);
    out.log_ = out.log_.substParam(name, value);
    out.reduce();
    return out;
}

ParamPoly JetFunction::evalAtJet0(const Rat& x) const {
    if (hasLog())
        throw UnsupportedInputError("evalAtJet0 of logarithmic term");
    if (maxJet() > 0)
        throw UnsupportedInputError("evalAtJet0 needs a function of v alone: " + toString());
    std::map<unsigned, Rat> pt{{0, x}};
    ParamPoly val = num_.evalJets(pt);
    for (const auto& [f, e] : den_) {
        Rat fv = f.evalJets(pt).asConstant();
        if (fv == 0)
            throw SingularSubstitutionError("denominator vanishes at v = " + ratToString(x));
        val *= ratPow(Rat(1) / fv, e);
    }
    return val;
}

ParamPoly JetFunction::taylorCoeffAtJet0(unsigned j) const {
    JetFunction f = *this;
    for (unsigned i = 0; i < j; ++i) f = f.jetPartial(0);
    ParamPoly c = f.evalAtJet0(0);
    Rat inv = Rat(1) / factorialRat(j);
    c *= inv;
    return c;
}

std::string JetFunction::toString(const std::string& name) const {
    std::ostringstream os;
    bool wrote = false;
    if (!num_.isZero() || log_.isZero()) {
        if (den_.empty()) {
            os << num_.toString(name);
        } else {
            os << "(" << num_.toString(name) << ")/(";
            bool first = true;
            for (const auto& [f, e] : den_) {
                if (!first) os << "*";
                first = false;
                os << "(" << f.toString(name) << ")";
                if (e > 1) os << "^" << e;
            }
            os << ")";
        }
        wrote = true;
    }
    if (hasLog()) {
        if (wrote) os << " + ";
        os << "(" << log_.toString() << ")*log(" << name << "1)";
    }
    return os.str();
}

JetFunction tDerivativeAlong(const JetFunction& flow, const JetFunction& f) {
    auto cache = std::make_shared<std::vector<JetFunction>>(1, flow);
    return f.derivationApply([cache](unsigned k) {
        while (cache->size() <= k) cache->push_back(cache->back().dx());
        return (*cache)[k];
    });
}

} // namespace vlh
