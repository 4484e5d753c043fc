#include "vlh/jet.hpp"
#include "vlh/error.hpp"

#include <sstream>

namespace vlh {

JetMonomial::JetMonomial(Exps e) {
    for (auto it = e.begin(); it != e.end();) {
        if (it->second == 0) it = e.erase(it); else ++it;
    }
    exps_ = std::move(e);
}

JetMonomial JetMonomial::var(unsigned jet, unsigned power) {
    JetMonomial m;
    if (power) m.exps_[jet] = power;
    return m;
}

unsigned JetMonomial::deg() const {
    unsigned d = 0;
    for (const auto& [k, e] : exps_) d += k * e;
    return d;
}

int JetMonomial::obarDeg() const {
    int d = 0;
    for (const auto& [k, e] : exps_)
        if (k >= 1) d += (int)(k - 1) * (int)e;
    return d;
}

unsigned JetMonomial::totalExp() const {
    unsigned t = 0;
    for (const auto& [k, e] : exps_) t += e;
    return t;
}

unsigned JetMonomial::maxJet() const {
    return exps_.empty() ? 0 : exps_.rbegin()->first;
}

unsigned JetMonomial::exp(unsigned jet) const {
    auto it = exps_.find(jet);
    return it == exps_.end() ? 0 : it->second;
}

JetMonomial JetMonomial::operator*(const JetMonomial& o) const {
    JetMonomial out = *this;
    for (const auto& [k, e] : o.exps_) out.exps_[k] += e;
    return out;
}

std::optional<JetMonomial> JetMonomial::tryDivide(const JetMonomial& o) const {
    JetMonomial out = *this;
    for (const auto& [k, e] : o.exps_) {
        auto it = out.exps_.find(k);
        if (it == out.exps_.end() || it->second < e) return std::nullopt;
        it->second -= e;
        if (it->second == 0) out.exps_.erase(it);
    }
    return out;
}

bool JetMonomial::operator<(const JetMonomial& o) const {
    unsigned da = deg(), db = o.deg();
    if (da != db) return da < db;
    unsigned ta = totalExp(), tb = o.totalExp();
    if (ta != tb) return ta < tb;
    // Lex from the highest jet downward.
    auto ia = exps_.rbegin(), ib = o.exps_.rbegin();
    while (ia != exps_.rend() && ib != o.exps_.rend()) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia; ++ib;
    }
    return ia == exps_.rend() && ib != o.exps_.rend();
}

std::string JetMonomial::toString(const std::string& name) const {
    if (exps_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, e] : exps_) {
        if (!first) os << "*";
        first = false;
        os << name;
        if (k > 0) os << k;
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

DiffPoly::DiffPoly(const ParamPoly& c) {
    if (!c.isZero()) terms_[JetMonomial{}] = c;
}

DiffPoly::DiffPoly(const JetMonomial& m, ParamPoly c) {
    if (!c.isZero()) terms_[m] = std::move(c);
}

DiffPoly DiffPoly::var(unsigned jet, unsigned power) {
    return DiffPoly(JetMonomial::var(jet, power));
}

bool DiffPoly::isConstantPoly() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

ParamPoly DiffPoly::constantCoeff() const {
    auto it = terms_.find(JetMonomial{});
    return it == terms_.end() ? ParamPoly() : it->second;
}

bool DiffPoly::coeffsConstant() const {
    for (const auto& [m, c] : terms_)
        if (!c.isConstant()) return false;
    return true;
}

ParamPoly DiffPoly::coeff(const JetMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ParamPoly() : it->second;
}

unsigned DiffPoly::maxJet() const {
    unsigned mj = 0;
    for (const auto& [m, c] : terms_) mj = std::max(mj, m.maxJet());
    return mj;
}

unsigned DiffPoly::degMax() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg());
    return d;
}

unsigned DiffPoly::degMin() const {
    if (terms_.empty()) return 0;
    unsigned d = terms_.begin()->first.deg();
    for (const auto& [m, c] : terms_) d = std::min(d, m.deg());
    return d;
}

bool DiffPoly::isHomogeneous(unsigned d) const {
    for (const auto& [m, c] : terms_)
        if (m.deg() != d) return false;
    return true;
}

int DiffPoly::obarDegMax() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.obarDeg());
    return d;
}

bool DiffPoly::dependsOnJet(unsigned jet) const {
    for (const auto& [m, c] : terms_)
        if (m.exp(jet)) return true;
    return false;
}

void DiffPoly::addTerm(const JetMonomial& m, const ParamPoly& c) {
    if (c.isZero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            out.addTerm(ma * mb, ca * cb);
    return out;
}

DiffPoly& DiffPoly::operator*=(const ParamPoly& c) {
    if (c.isZero()) { terms_.clear(); return *this; }
    for (auto& [m, v] : terms_) v *= c;
    // multiplying by a nonzero polynomial cannot kill a nonzero coefficient
    return *this;
}

DiffPoly DiffPoly::pow(unsigned e) const {
    DiffPoly out(1);
    DiffPoly b = *this;
    while (e) {
        if (e & 1u) out *= b;
        if (e >>= 1u) b *= b;
    }
    return out;
}

DiffPoly DiffPoly::dx() const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
        for (const auto& [k, e] : m.exps()) {
            if (k + 1 > jetCap())
                throw CutoffError("dx would produce jet order " + std::to_string(k + 1));
            JetMonomial::Exps ex = m.exps();
            if (--ex[k] == 0) ex.erase(k);
            ++ex[k + 1];
            out.addTerm(JetMonomial(std::move(ex)), ParamPoly(Rat((long)e)) * c);
        }
    }
    return out;
}

DiffPoly DiffPoly::dxPow(unsigned n) const {
    DiffPoly out = *this;
    for (unsigned i = 0; i < n; ++i) out = out.dx();
    return out;
}

DiffPoly DiffPoly::jetPartial(unsigned k) const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exp(k);
        if (!e) continue;
        JetMonomial::Exps ex = m.exps();
        if (--ex[k] == 0) ex.erase(k);
        out.addTerm(JetMonomial(std::move(ex)), ParamPoly(Rat((long)e)) * c);
    }
    return out;
}

DiffPoly DiffPoly::antideriv(unsigned k) const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
        JetMonomial::Exps ex = m.exps();
        unsigned e = ++ex[k];
        out.addTerm(JetMonomial(std::move(ex)), ParamPoly(Rat(1, (long)e)) * c);
    }
    return out;
}

DiffPoly DiffPoly::substituteJet0(const DiffPoly& value) const {
    std::map<unsigned, DiffPoly> cache; // power -> value^power
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exp(0);
        JetMonomial::Exps rest = m.exps();
        rest.erase(0);
        DiffPoly term(JetMonomial(std::move(rest)), c);
        if (e) {
            auto it = cache.find(e);
            if (it == cache.end()) it = cache.emplace(e, value.pow(e)).first;
            term *= it->second;
        }
        out += term;
    }
    return out;
}

DiffPoly DiffPoly::substituteAll(const std::map<unsigned, DiffPoly>& images) const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
        DiffPoly term{c};
        for (const auto& [k, e] : m.exps()) {
            auto it = images.find(k);
            if (it == images.end())
                throw UnsupportedInputError("substituteAll: no image for jet " + std::to_string(k));
            term *= it->second.pow(e);
        }
        out += term;
    }
    return out;
}

ParamPoly DiffPoly::evalJets(const std::map<unsigned, Rat>& point) const {
    ParamPoly out;
    for (const auto& [m, c] : terms_) {
        Rat v = 1;
        for (const auto& [k, e] : m.exps()) {
            auto it = point.find(k);
            if (it == point.end())
                throw UnsupportedInputError("evalJets: no value for jet " + std::to_string(k));
            v *= ratPow(it->second, e);
        }
        ParamPoly t = c;
        t *= v;
        out += t;
    }
    return out;
}

DiffPoly DiffPoly::substParam(const std::string& name, const ParamPoly& value) const {
    DiffPoly out;
    for (const auto& [m, c] : terms_)
        out.addTerm(m, c.substParam(name, value));
    return out;
}

Rat DiffPoly::content() const {
    if (terms_.empty()) return 0;
    mpz_class num = 0, den = 1;
    for (const auto& [m, c] : terms_) {
        if (!c.isConstant())
            throw UnsupportedInputError("content of polynomial with parameter coefficients");
        Rat r = c.asConstant();
        num = gcd(num, r.get_num());
        den = lcm(den, r.get_den());
    }
    Rat g(num, den);
    g.canonicalize();
    if (terms_.rbegin()->second.asConstant() < 0) g = -g;
    return g;
}

DiffPoly DiffPoly::primitivePart() const {
    if (terms_.empty()) return *this;
    Rat g = content();
    DiffPoly out = *this;
    out *= Rat(1) / g;
    return out;
}

std::string DiffPoly::toString(const std::string& name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.toString();
        bool simpleCoeff = c.isConstant();
        Rat a = simpleCoeff ? c.asConstant() : Rat(0);
        if (!first) os << " + ";
        first = false;
        if (!simpleCoeff) {
            os << "(" << cs << ")";
            if (!m.empty()) os << "*" << m.toString(name);
        } else if (m.empty()) {
            os << ratToString(a);
        } else if (a == 1) {
            os << m.toString(name);
        } else if (a == -1) {
            os << "-" << m.toString(name);
        } else {
            os << ratToString(a) << "*" << m.toString(name);
        }
    }
    return os.str();
}

std::optional<DiffPoly> tryExactDivide(const DiffPoly& a, const DiffPoly& b) {
    if (b.isZero()) return std::nullopt;
    const auto& lead = *b.terms().rbegin();
    if (!lead.second.isConstant())
        throw UnsupportedInputError("exact division by polynomial with parametric leading coefficient");
    Rat lc = lead.second.asConstant();
    DiffPoly rem = a, quot;
    while (!rem.isZero()) {
        const auto& top = *rem.terms().rbegin();
        auto qm = top.first.tryDivide(lead.first);
        if (!qm) return std::nullopt;
        DiffPoly t(*qm, ParamPoly(Rat(1) / lc) * top.second);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

DiffPoly integrateX(const DiffPoly& p) {
    DiffPoly rem = p, out;
    while (!rem.isZero()) {
        unsigned k = rem.maxJet();
        if (k == 0)
            throw NotExactError("not a total x-derivative; remainder " + rem.toString());
        DiffPoly a = rem.jetPartial(k);
        if (a.dependsOnJet(k))
            throw NotExactError("not a total x-derivative; top jet nonlinear in " + rem.toString());
        DiffPoly q = a.antideriv(k - 1);
        out += q;
        rem -= q.dx();
        if (rem.maxJet() >= k && !rem.isZero())
            throw NotExactError("not a total x-derivative; remainder " + rem.toString());
    }
    return out;
}

DiffPoly variationalDerivative(const DiffPoly& p) {
    DiffPoly out;
    unsigned mj = p.maxJet();
    for (unsigned k = 0; k <= mj; ++k) {
        DiffPoly term = p.jetPartial(k).dxPow(k);
        if (k % 2) out -= term; else out += term;
    }
    return out;
}

DiffPoly tDerivativeAlong(const DiffPoly& flow, const DiffPoly& f) {
    DiffPoly out;
    unsigned mj = f.maxJet();
    DiffPoly img = flow;
    for (unsigned k = 0; k <= mj; ++k) {
        DiffPoly pf = f.jetPartial(k);
        if (!pf.isZero()) out += img * pf;
        if (k < mj) img = img.dx();
    }
    return out;
}

} // namespace vlh
