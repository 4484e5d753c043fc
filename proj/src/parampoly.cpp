#include "vlh/parampoly.hpp"

#include <set>
#include <sstream>

namespace vlh {

ParamPoly ParamPoly::param(const std::string& name, unsigned power) {
    ParamPoly p;
    if (power == 0) return ParamPoly(1);
    p.terms_[Mono{{name, power}}] = 1;
    return p;
}

bool ParamPoly::isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat ParamPoly::constantTerm() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat ParamPoly::asConstant() const {
    if (!isConstant())
        throw std::invalid_argument("ParamPoly::asConstant on non-constant " + toString());
    return constantTerm();
}

void ParamPoly::add(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    ParamPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Mono m = ma;
            for (const auto& [name, e] : mb) m[name] += e;
            out.add(m, ca * cb);
        }
    return out;
}

ParamPoly& ParamPoly::operator*=(const Rat& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

ParamPoly ParamPoly::substParam(const std::string& name, const ParamPoly& value) const {
    ParamPoly out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        unsigned e = 0;
        auto it = rest.find(name);
        if (it != rest.end()) { e = it->second; rest.erase(it); }
        ParamPoly term;
        term.terms_[rest] = c;
        for (unsigned k = 0; k < e; ++k) term = term * value;
        out += term;
    }
    return out;
}

unsigned ParamPoly::degreeIn(const std::string& name) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(name);
        if (it != m.end() && it->second > d) d = it->second;
    }
    return d;
}

std::vector<std::string> ParamPoly::paramNames() const {
    std::set<std::string> names;
    for (const auto& [m, c] : terms_)
        for (const auto& [name, e] : m) names.insert(name);
    return {names.begin(), names.end()};
}

std::string ParamPoly::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool wroteCoeff = false;
        if (a != 1 || m.empty()) { os << ratToString(a); wroteCoeff = true; }
        for (const auto& [name, e] : m) {
            if (wroteCoeff) os << "*";
            os << name;
            if (e > 1) os << "^" << e;
            wroteCoeff = true;
        }
    }
    return os.str();
}

} // namespace vlh
