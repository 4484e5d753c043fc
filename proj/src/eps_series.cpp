#include "vlh/eps_series.hpp"
#include "vlh/error.hpp"

#include <sstream>

namespace vlh {

EpsSeries::EpsSeries(JetFunction f, unsigned cap) : cap_(cap) {
    if (!f.isZero()) c_[0] = std::move(f);
}

EpsSeries EpsSeries::monomial(unsigned power, JetFunction f, unsigned cap) {
    EpsSeries s(cap);
    if (power <= cap && !f.isZero()) s.c_[power] = std::move(f);
    return s;
}

JetFunction EpsSeries::coeff(unsigned n) const {
    auto it = c_.find(n);
    return it == c_.end() ? JetFunction() : it->second;
}

void EpsSeries::setCoeff(unsigned n, JetFunction f) {
    if (n > cap_) return;
    if (f.isZero()) c_.erase(n);
    else c_[n] = std::move(f);
}

std::optional<unsigned> EpsSeries::minOrder() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

void EpsSeries::trim() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first > cap_ || it->second.isZero()) it = c_.erase(it);
        else ++it;
    }
}

EpsSeries EpsSeries::operator-() const {
    EpsSeries out(cap_);
    for (const auto& [n, f] : c_) out.c_.emplace(n, -f);
    return out;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
    cap_ = std::min(cap_, o.cap_);
    for (const auto& [n, f] : o.c_) {
        if (n > cap_) break;
        auto it = c_.find(n);
        if (it == c_.end()) c_.emplace(n, f);
        else it->second += f;
    }
    trim();
    return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) {
    return *this += -o;
}

EpsSeries EpsSeries::operator*(const EpsSeries& o) const {
    EpsSeries out(std::min(cap_, o.cap_));
    for (const auto& [na, fa] : c_) {
        if (na > out.cap_) break;
        for (const auto& [nb, fb] : o.c_) {
            if (na + nb > out.cap_) break;
            JetFunction p = fa * fb;
            if (p.isZero()) continue;
            auto it = out.c_.find(na + nb);
            if (it == out.c_.end()) out.c_.emplace(na + nb, std::move(p));
            else it->second += p;
        }
    }
    out.trim();
    return out;
}

EpsSeries& EpsSeries::operator*=(const JetFunction& f) {
    for (auto& [n, g] : c_) g *= f;
    trim();
    return *this;
}

EpsSeries& EpsSeries::operator*=(const Rat& r) {
    for (auto& [n, g] : c_) g *= r;
    trim();
    return *this;
}

EpsSeries& EpsSeries::operator*=(const ParamPoly& p) {
    for (auto& [n, g] : c_) g *= p;
    trim();
    return *this;
}

EpsSeries EpsSeries::shifted(unsigned k) const {
    EpsSeries out(cap_);
    for (const auto& [n, f] : c_)
        if (n + k <= cap_) out.c_.emplace(n + k, f);
    return out;
}

EpsSeries EpsSeries::truncated(unsigned newCap) const {
    EpsSeries out = *this;
    out.cap_ = std::min(cap_, newCap);
    out.trim();
    return out;
}

EpsSeries EpsSeries::dx() const {
    EpsSeries out(cap_);
    for (const auto& [n, f] : c_) out.setCoeff(n, f.dx());
    return out;
}

EpsSeries EpsSeries::dxPow(unsigned n) const {
    EpsSeries out = *this;
    for (unsigned i = 0; i < n; ++i) out = out.dx();
    return out;
}

EpsSeries EpsSeries::substParam(const std::string& name, const ParamPoly& value) const {
    EpsSeries out(cap_);
    for (const auto& [n, f] : c_) out.setCoeff(n, f.substParam(name, value));
    return out;
}

bool EpsSeries::agreesWith(const EpsSeries& o) const {
    unsigned m = std::min(cap_, o.cap_);
    for (unsigned n = 0; n <= m; ++n)
        if (coeff(n) != o.coeff(n)) return false;
    return true;
}

std::string EpsSeries::toString(const std::string& name) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, f] : c_) {
        if (!first) os << " + ";
        first = false;
        if (n == 0) os << f.toString(name);
        else os << "eps^" << n << "*(" << f.toString(name) << ")";
    }
    return os.str();
}

EpsSeries tDerivativeAlong(const EpsSeries& flow, const EpsSeries& f) {
    EpsSeries out(std::min(flow.cap(), f.cap()));
    for (const auto& [na, fa] : flow.coeffs()) {
        if (na > out.cap()) break;
        for (const auto& [nb, fb] : f.coeffs()) {
            if (na + nb > out.cap()) break;
            JetFunction t = tDerivativeAlong(fa, fb);
            if (t.isZero()) continue;
            out.setCoeff(na + nb, out.coeff(na + nb) + t);
        }
    }
    return out;
}

JetSubstitution::JetSubstitution(EpsSeries base) : base_(std::move(base)) {
    if (base_.coeff(0) != JetFunction(DiffPoly::var(0)))
        throw UnsupportedInputError("substitution base must be v + higher order in eps");
    images_.push_back(base_);
}

const EpsSeries& JetSubstitution::image(unsigned k) {
    while (images_.size() <= k) images_.push_back(images_.back().dx());
    return images_[k];
}

const EpsSeries& JetSubstitution::inverseFactor(const DiffPoly& f) {
    auto it = invCache_.find(f);
    if (it != invCache_.end()) return it->second;
    // S = f under the substitution; S = f + U with U = O(eps).
    EpsSeries S = apply(JetFunction(f));
    EpsSeries U = S - EpsSeries(JetFunction(f), cap());
    JetFunction recipF = JetFunction::reciprocal(f);
    // 1/S = sum_j (-1)^j U^j / f^{j+1}
    EpsSeries out(JetFunction(recipF), cap());
    if (auto m0 = U.minOrder()) {
        if (*m0 == 0)
            throw InvariantError("denominator image not a perturbation of itself");
        EpsSeries term(JetFunction(1), cap());
        for (unsigned j = 1; j * *m0 <= cap(); ++j) {
            term = term * U;
            term *= recipF;
            EpsSeries t = term;
            t *= (j % 2 ? Rat(-1) : Rat(1));
            t *= recipF;
            out += t;
        }
    }
    return invCache_.emplace(f, std::move(out)).first->second;
}

const EpsSeries& JetSubstitution::logImage() {
    if (logCache_) return *logCache_;
    // log w_1 = log v_1 + log(1 + Z), Z = (image(v_1) - v_1)/v_1.
    EpsSeries Z = image(1) - EpsSeries(JetFunction(DiffPoly::var(1)), cap());
    Z *= JetFunction::reciprocal(DiffPoly::var(1));
    EpsSeries out(JetFunction::logV1(ParamPoly(1)), cap());
    if (auto m0 = Z.minOrder()) {
        if (*m0 == 0)
            throw InvariantError("log image not a perturbation of log v1");
        EpsSeries term(JetFunction(1), cap());
        for (unsigned j = 1; j * *m0 <= cap(); ++j) {
            term = term * Z;
            EpsSeries t = term;
            t *= (j % 2 ? Rat(1) : Rat(-1)) / Rat((long)j);
            out += t;
        }
    }
    logCache_ = std::move(out);
    return *logCache_;
}

EpsSeries JetSubstitution::apply(const JetFunction& f) {
    EpsSeries out(cap());
    for (const auto& [m, c] : f.num().terms()) {
        EpsSeries term(JetFunction(DiffPoly(c)), cap());
        for (const auto& [k, e] : m.exps())
            for (unsigned i = 0; i < e; ++i) term = term * image(k);
        out += term;
    }
    for (const auto& [den, e] : f.den())
        for (unsigned i = 0; i < e; ++i) out = out * inverseFactor(den);
    if (f.hasLog()) {
        EpsSeries t = logImage();
        t *= f.logCoeff();
        out += t;
    }
    return out;
}

EpsSeries JetSubstitution::apply(const EpsSeries& s) {
    EpsSeries out(std::min(cap(), s.cap()));
    for (const auto& [n, f] : s.coeffs()) {
        if (n > out.cap()) break;
        out += apply(f).shifted(n).truncated(out.cap());
    }
    return out;
}

} // namespace vlh
