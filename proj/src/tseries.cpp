#include "vlh/tseries.hpp"
#include "vlh/error.hpp"

#include <sstream>

namespace vlh {

namespace {
unsigned monoDeg(const TSeries::Mono& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}
} // namespace

TSeries::TSeries(const Rat& c, unsigned cap) : cap_(cap) {
    if (c != 0) terms_[Mono{}] = c;
}

TSeries TSeries::var(unsigned m, unsigned cap) {
    TSeries s(cap);
    if (cap >= 1) s.terms_[Mono{{m, 1}}] = 1;
    return s;
}

Rat TSeries::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void TSeries::add(const Mono& m, const Rat& c) {
    if (c == 0 || monoDeg(m) > cap_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.emplace(m, c);
    else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void TSeries::trim() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (monoDeg(it->first) > cap_ || it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

TSeries TSeries::operator-() const {
    TSeries out(cap_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

TSeries& TSeries::operator+=(const TSeries& o) {
    cap_ = std::min(cap_, o.cap_);
    trim();
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
    return *this += -o;
}

TSeries TSeries::operator*(const TSeries& o) const {
    TSeries out(std::min(cap_, o.cap_));
    for (const auto& [ma, ca] : terms_) {
        unsigned da = monoDeg(ma);
        if (da > out.cap_) continue;
        for (const auto& [mb, cb] : o.terms_) {
            if (da + monoDeg(mb) > out.cap_) continue;
            Mono m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            out.add(m, ca * cb);
        }
    }
    return out;
}

TSeries& TSeries::operator*=(const Rat& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

TSeries TSeries::pow(unsigned e) const {
    TSeries out(Rat(1), cap_);
    TSeries b = *this;
    while (e) {
        if (e & 1u) out *= b;
        if (e >>= 1u) b *= b;
    }
    return out;
}

TSeries TSeries::truncated(unsigned newCap) const {
    TSeries out = *this;
    out.cap_ = std::min(cap_, newCap);
    out.trim();
    return out;
}

TSeries TSeries::tPartial(unsigned m) const {
    TSeries out(cap_);
    for (const auto& [mono, c] : terms_) {
        auto it = mono.find(m);
        if (it == mono.end()) continue;
        Mono d = mono;
        unsigned e = it->second;
        if (--d[m] == 0) d.erase(m);
        out.add(d, c * Rat((long)e));
    }
    return out;
}

TSeries TSeries::inverse() const {
    Rat c0 = coeff(Mono{});
    if (c0 == 0)
        throw SingularSubstitutionError("inverse of series with zero constant term");
    // 1/(c0 (1 + g)) = (1/c0) sum (-g)^j
    TSeries g = *this;
    g *= Rat(1) / c0;
    g -= TSeries(Rat(1), cap_);
    TSeries out(Rat(1), cap_), term(Rat(1), cap_);
    for (unsigned j = 1; j <= cap_; ++j) {
        term = term * g;
        if (term.isZero()) break;
        out += (j % 2 ? Rat(-1) : Rat(1)) * term;
    }
    out *= Rat(1) / c0;
    return out;
}

bool TSeries::agreesWith(const TSeries& o) const {
    unsigned m = std::min(cap_, o.cap_);
    TSeries d = truncated(m);
    d -= o.truncated(m);
    return d.isZero();
}

std::string TSeries::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << ratToString(c);
        for (const auto& [v, e] : m) {
            os << "*t" << v;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace vlh
