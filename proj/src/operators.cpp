#include "vlh/operators.hpp"
#include "vlh/error.hpp"

namespace vlh {

namespace {

// Dense polynomial in nu (index = power), rational coefficients.
using NuPoly = std::vector<Rat>;

// multiply by (a + sign*nu)
NuPoly mulLinear(const NuPoly& p, const Rat& a, int sign) {
    NuPoly out(p.size() + 1, Rat(0));
    for (size_t j = 0; j < p.size(); ++j) {
        out[j] += a * p[j];
        out[j + 1] += Rat(sign) * p[j];
    }
    return out;
}

Rat nuCoeff(const NuPoly& p, unsigned j) {
    return j < p.size() ? p[j] : Rat(0);
}

void addUnordered(std::map<OperatorSpec::Pair, ParamPoly>& table,
                  unsigned m, unsigned mp, const ParamPoly& c) {
    if (c.isZero()) return;
    auto key = m <= mp ? OperatorSpec::Pair{m, mp} : OperatorSpec::Pair{mp, m};
    auto it = table.find(key);
    if (it == table.end()) table.emplace(key, c);
    else {
        it->second += c;
        if (it->second.isZero()) table.erase(it);
    }
}

void addEntry(std::map<OperatorSpec::Pair, ParamPoly>& table,
              OperatorSpec::Pair key, const ParamPoly& c) {
    if (c.isZero()) return;
    auto it = table.find(key);
    if (it == table.end()) table.emplace(key, c);
    else {
        it->second += c;
        if (it->second.isZero()) table.erase(it);
    }
}

// Expand an unordered total-coefficient table into the symmetric tensor on
// ordered pairs (half off the diagonal).
std::map<OperatorSpec::Pair, ParamPoly>
orderedSym(const std::map<OperatorSpec::Pair, ParamPoly>& table) {
    std::map<OperatorSpec::Pair, ParamPoly> out;
    for (const auto& [key, c] : table) {
        if (key.first == key.second) {
            out[key] = c;
        } else {
            ParamPoly half = c;
            half *= ratFrom(1, 2);
            out[{key.first, key.second}] = half;
            out[{key.second, key.first}] = half;
        }
    }
    return out;
}

} // namespace

bool OperatorSpec::isZero() const {
    return quadA.empty() && linB.empty() && quadC.empty() && constTerm.isZero();
}

long OperatorSpec::maxShift() const {
    long s = 0;
    for (const auto& [key, c] : linB)
        s = std::max(s, (long)key.first - (long)key.second);
    return s;
}

ParamPoly OperatorSpec::bCoeff(unsigned tgt, unsigned src) const {
    if ((long)src > srcMax)
        throw CutoffError("flow-shift table not materialized for source " + std::to_string(src));
    auto it = linB.find({tgt, src});
    return it == linB.end() ? ParamPoly() : it->second;
}

ParamPoly OperatorSpec::aSym(unsigned m, unsigned mp) const {
    auto key = m <= mp ? Pair{m, mp} : Pair{mp, m};
    auto it = quadA.find(key);
    if (it == quadA.end()) return ParamPoly();
    ParamPoly c = it->second;
    if (m != mp) c *= ratFrom(1, 2);
    return c;
}

ParamPoly OperatorSpec::cSym(unsigned m, unsigned mp) const {
    auto key = m <= mp ? Pair{m, mp} : Pair{mp, m};
    auto it = quadC.find(key);
    if (it == quadC.end()) return ParamPoly();
    ParamPoly c = it->second;
    if (m != mp) c *= ratFrom(1, 2);
    return c;
}

OperatorSpec OperatorSpec::substParam(const std::string& name, const ParamPoly& value) const {
    OperatorSpec out;
    out.srcMax = srcMax;
    for (const auto& [k, c] : quadA) addEntry(out.quadA, k, c.substParam(name, value));
    for (const auto& [k, c] : linB) addEntry(out.linB, k, c.substParam(name, value));
    for (const auto& [k, c] : quadC) addEntry(out.quadC, k, c.substParam(name, value));
    out.constTerm = constTerm.substParam(name, value);
    return out;
}

NuOperator buildL(int i, unsigned srcMax) {
    if (i < -1)
        throw UnsupportedInputError("levels below -1 are not defined");
    unsigned nJ = (unsigned)((i + 1) / 2);
    NuOperator L;
    L.level = i;
    L.byNuPower.assign(nJ + 1, OperatorSpec{});
    for (auto& op : L.byNuPower) op.srcMax = (long)srcMax;

    // Flow-shift family: the coefficient of ttilde_m d/dt_{m+i} is the
    // even-in-nu part of prod_{k=0}^{i} (m + 1/2 + k + nu).
    for (unsigned m = 0; m <= srcMax; ++m) {
        long tgt = (long)m + i;
        if (tgt < 0) continue;
        NuPoly p{Rat(1)};
        for (int k = 0; k <= i; ++k)
            p = mulLinear(p, Rat((long)m) + ratFrom(1, 2) + Rat(k), +1);
        for (unsigned j = 0; j <= nJ; ++j)
            addEntry(L.byNuPower[j].linB, {(unsigned)tgt, m}, ParamPoly(nuCoeff(p, 2 * j)));
    }

    // Quadratic-derivative terms pair flows with m + m' = i - 1.
    for (int m = 0; i >= 1 && m <= i - 1; ++m) {
        int mp = i - 1 - m;
        if (m > mp) break;
        NuPoly p{Rat(1)};
        for (int k = 0; k <= m; ++k)
            p = mulLinear(p, Rat(k) + ratFrom(1, 2), +1);
        for (int k = 0; k <= mp; ++k)
            p = mulLinear(p, Rat(k) + ratFrom(1, 2), -1);
        // total unordered coefficient: even part for m != m', half the
        // (already even) product on the diagonal
        for (unsigned j = 0; j <= nJ; ++j) {
            Rat c = nuCoeff(p, 2 * j);
            if (m == mp) c /= 2;
            addEntry(L.byNuPower[j].quadA, {(unsigned)m, (unsigned)mp}, ParamPoly(c));
        }
    }

    // Quadratic-source term (creation-creation pairing), present at i = -1.
    if (i == -1)
        addEntry(L.byNuPower[0].quadC, {0, 0}, ParamPoly(ratFrom(1, 2)));

    // Normal-ordering constant 1/16 at level 0.
    if (i == 0)
        L.byNuPower[0].constTerm = ParamPoly(ratFrom(1, 16));

    return L;
}

OperatorSpec extractLike(int i, unsigned j, unsigned srcMax) {
    NuOperator L = buildL(i, srcMax);
    if (j >= L.byNuPower.size())
        throw UnsupportedInputError("nu-order " + std::to_string(2 * j) +
                                    " out of range for level " + std::to_string(i));
    return L.byNuPower[j];
}

OperatorSpec combine(const std::vector<std::pair<ParamPoly, OperatorSpec>>& terms) {
    OperatorSpec out;
    out.srcMax = -1;
    bool first = true;
    for (const auto& [coeff, op] : terms) {
        out.srcMax = first ? op.srcMax : std::min(out.srcMax, op.srcMax);
        first = false;
        for (const auto& [k, c] : op.quadA) addEntry(out.quadA, k, coeff * c);
        for (const auto& [k, c] : op.linB) addEntry(out.linB, k, coeff * c);
        for (const auto& [k, c] : op.quadC) addEntry(out.quadC, k, coeff * c);
        out.constTerm += coeff * op.constTerm;
    }
    if (first) out.srcMax = 0;
    return out;
}

OperatorSpec commutator(const OperatorSpec& X, const OperatorSpec& Y) {
    OperatorSpec out;
    long shift = std::max({X.maxShift(), Y.maxShift(), 0L});
    out.srcMax = std::min(X.srcMax, Y.srcMax) - shift;

    std::map<OperatorSpec::Pair, ParamPoly> ordA, ordC;
    auto aX = orderedSym(X.quadA), aY = orderedSym(Y.quadA);
    auto cX = orderedSym(X.quadC), cY = orderedSym(Y.quadC);

    // [ttilde_a d_b, ttilde_c d_d] = delta_{bc} ttilde_a d_d - delta_{da} ttilde_c d_b
    for (const auto& [kx, beta] : X.linB) {
        unsigned b = kx.first, a = kx.second;
        for (const auto& [ky, gamma] : Y.linB) {
            unsigned d = ky.first, c = ky.second;
            if (b == c) addEntry(out.linB, {d, a}, beta * gamma);
            if (d == a) addEntry(out.linB, {b, c}, -(beta * gamma));
        }
    }

    // [d_m d_m', ttilde_c d_d] = delta_{mc} d_m' d_d + delta_{m'c} d_m d_d
    auto quadTimesLin = [&](const std::map<OperatorSpec::Pair, ParamPoly>& ord,
                            const OperatorSpec& B, int sign) {
        for (const auto& [ka, alpha] : ord) {
            unsigned m = ka.first, mp = ka.second;
            for (const auto& [kb, gamma] : B.linB) {
                unsigned d = kb.first, c = kb.second;
                ParamPoly v = alpha * gamma;
                if (sign < 0) v = -v;
                if (c == m) addEntry(ordA, {mp, d}, v);
                if (c == mp) addEntry(ordA, {m, d}, v);
            }
        }
    };
    quadTimesLin(aX, Y, +1);
    quadTimesLin(aY, X, -1);

    // [d_m d_m', ttilde_c ttilde_d] = delta_{m'c} delta_{md} + delta_{m'd} delta_{mc}
    //   + delta_{m'c} ttilde_d d_m + delta_{m'd} ttilde_c d_m
    //   + delta_{mc} ttilde_d d_m' + delta_{md} ttilde_c d_m'
    auto quadTimesSrc = [&](const std::map<OperatorSpec::Pair, ParamPoly>& ord,
                            const std::map<OperatorSpec::Pair, ParamPoly>& src, int sign) {
        for (const auto& [ka, alpha] : ord) {
            unsigned m = ka.first, mp = ka.second;
            for (const auto& [kc, gamma] : src) {
                unsigned c = kc.first, d = kc.second;
                ParamPoly v = alpha * gamma;
                if (sign < 0) v = -v;
                if (mp == c && m == d) out.constTerm += v;
                if (mp == d && m == c) out.constTerm += v;
                if (mp == c) addEntry(out.linB, {m, d}, v);
                if (mp == d) addEntry(out.linB, {m, c}, v);
                if (m == c) addEntry(out.linB, {mp, d}, v);
                if (m == d) addEntry(out.linB, {mp, c}, v);
            }
        }
    };
    quadTimesSrc(aX, cY, +1);
    quadTimesSrc(aY, cX, -1);

    // [ttilde_a d_b, ttilde_c ttilde_d] = delta_{bc} ttilde_a ttilde_d + delta_{bd} ttilde_a ttilde_c
    auto linTimesSrc = [&](const OperatorSpec& B,
                           const std::map<OperatorSpec::Pair, ParamPoly>& src, int sign) {
        for (const auto& [kb, beta] : B.linB) {
            unsigned b = kb.first, a = kb.second;
            for (const auto& [kc, gamma] : src) {
                unsigned c = kc.first, d = kc.second;
                ParamPoly v = beta * gamma;
                if (sign < 0) v = -v;
                if (b == c) addEntry(ordC, {a, d}, v);
                if (b == d) addEntry(ordC, {a, c}, v);
            }
        }
    };
    linTimesSrc(X, cY, +1);
    linTimesSrc(Y, cX, -1);

    // fold ordered accumulations back to unordered totals
    for (const auto& [k, c] : ordA) addUnordered(out.quadA, k.first, k.second, c);
    for (const auto& [k, c] : ordC) addUnordered(out.quadC, k.first, k.second, c);

    // discard flow-shift entries beyond the trusted range
    for (auto it = out.linB.begin(); it != out.linB.end();) {
        if ((long)it->first.second > out.srcMax) it = out.linB.erase(it);
        else ++it;
    }
    return out;
}

bool specEquals(const OperatorSpec& A, const OperatorSpec& B) {
    if (A.quadA != B.quadA || A.quadC != B.quadC || A.constTerm != B.constTerm)
        return false;
    long common = std::min(A.srcMax, B.srcMax);
    auto within = [&](const OperatorSpec& op, const OperatorSpec& other) {
        for (const auto& [k, c] : op.linB) {
            if ((long)k.second > common) continue;
            auto it = other.linB.find(k);
            if (it == other.linB.end() || it->second != c) return false;
        }
        return true;
    };
    return within(A, B) && within(B, A);
}

namespace {

TSeries evalOnSeries(const DiffPoly& p, const TSeries& v,
                     std::map<unsigned, TSeries>& powCache, unsigned cap) {
    // p must depend on v_0 alone
    TSeries out(cap);
    for (const auto& [mono, c] : p.terms()) {
        if (mono.maxJet() > 0)
            throw UnsupportedInputError("series evaluation of a jet-dependent polynomial");
        unsigned e = mono.exp(0);
        TSeries term(c.asConstant(), cap);
        if (e) {
            auto it = powCache.find(e);
            if (it == powCache.end()) it = powCache.emplace(e, v.pow(e)).first;
            term *= it->second;
        }
        out += term;
    }
    return out;
}

// Split an operator with parameter-polynomial coefficients into its
// components along parameter monomials; the genus-0 constraint is linear in
// the table, so it holds iff it holds for every component.
std::vector<OperatorSpec> paramComponents(const OperatorSpec& op) {
    std::map<ParamPoly::Mono, OperatorSpec> parts;
    auto get = [&](const ParamPoly::Mono& mu) -> OperatorSpec& {
        auto it = parts.find(mu);
        if (it == parts.end()) {
            it = parts.emplace(mu, OperatorSpec{}).first;
            it->second.srcMax = op.srcMax;
        }
        return it->second;
    };
    auto scatter = [&](const std::map<OperatorSpec::Pair, ParamPoly>& table,
                       std::map<OperatorSpec::Pair, ParamPoly> OperatorSpec::*member) {
        for (const auto& [k, c] : table)
            for (const auto& [mu, r] : c.terms())
                addEntry(get(mu).*member, k, ParamPoly(r));
    };
    scatter(op.quadA, &OperatorSpec::quadA);
    scatter(op.linB, &OperatorSpec::linB);
    scatter(op.quadC, &OperatorSpec::quadC);
    for (const auto& [mu, r] : op.constTerm.terms())
        get(mu).constTerm = ParamPoly(r);
    std::vector<OperatorSpec> out;
    for (auto& [mu, part] : parts) out.push_back(std::move(part));
    return out;
}

Genus0Check checkGenus0Rational(const OperatorSpec& op, unsigned maxTime, unsigned degree) {
    TSeries v = topologicalSolution(maxTime, degree);
    std::map<unsigned, TSeries> powCache;
    auto ttilde = [&](unsigned r) {
        TSeries t = TSeries::var(r, degree);
        if (r == 1) t -= TSeries(Rat(1), degree);
        return t;
    };
    std::map<unsigned, TSeries> dF; // dF0/dt_m on the topological solution
    auto getDF = [&](unsigned m) -> const TSeries& {
        auto it = dF.find(m);
        if (it == dF.end()) {
            TSeries s(degree);
            for (unsigned r = 0; r <= maxTime; ++r)
                s += ttilde(r) * evalOnSeries(omega0(m, r), v, powCache, degree);
            it = dF.emplace(m, std::move(s)).first;
        }
        return it->second;
    };

    TSeries phi(degree);
    for (const auto& [k, c] : op.quadA) {
        TSeries t = getDF(k.first) * getDF(k.second);
        t *= c.asConstant();
        phi += t;
    }
    if ((long)maxTime > op.srcMax)
        throw CutoffError("flow-shift table too small for requested t-range");
    for (const auto& [k, c] : op.linB) {
        if (k.second > maxTime) continue;
        TSeries t = ttilde(k.second) * getDF(k.first);
        t *= c.asConstant();
        phi += t;
    }
    for (const auto& [k, c] : op.quadC) {
        TSeries t = ttilde(k.first) * ttilde(k.second);
        t *= c.asConstant();
        phi += t;
    }
    return {phi.isZero(), phi};
}

} // namespace

Genus0Check checkGenus0(const OperatorSpec& op, unsigned maxTime, unsigned degree) {
    for (const auto& part : paramComponents(op)) {
        Genus0Check c = checkGenus0Rational(part, maxTime, degree);
        if (!c.pass) return c;
    }
    return {true, TSeries(degree)};
}

DGenerator makeD(const OperatorSpec& op, unsigned K) {
    auto aOrd = orderedSym(op.quadA);
    // flow-shift entries with source 0
    std::map<unsigned, ParamPoly> b0;
    for (const auto& [k, c] : op.linB)
        if (k.second == 0) b0.emplace(k.first, c);
    if (op.srcMax < 0)
        throw CutoffError("flow-shift table missing source 0");

    std::map<unsigned, std::vector<DiffPoly>> om; // m -> [dx^k omega0(0,m)]
    auto omDx = [&](unsigned m, unsigned k) -> const DiffPoly& {
        auto& vec = om[m];
        if (vec.empty()) vec.push_back(omega0(0, m));
        while (vec.size() <= k) vec.push_back(vec.back().dx());
        return vec[k];
    };

    DGenerator D;
    DiffPoly d0;
    for (const auto& [k, a] : aOrd)
        d0 += a * (omDx(k.first, 0) * omDx(k.second, 0));
    for (const auto& [m, b] : b0)
        d0 += b * omDx(m, 0);
    d0 += DiffPoly(op.cSym(0, 0));
    d0 *= Rat(-2);
    D.images.push_back(d0);

    for (unsigned k = 1; k <= K; ++k) {
        DiffPoly dk = D.images.back().dx();
        for (const auto& [key, a] : aOrd) {
            DiffPoly t = omDx(key.first, 0) * omDx(key.second, k)
                       + omDx(key.second, 0) * omDx(key.first, k);
            dk -= a * t;
        }
        for (const auto& [m, b] : b0)
            dk -= b * omDx(m, k);
        D.images.push_back(dk);
        if (dk.obarDegMax() > (int)k - 1)
            throw InvariantError("derivation image at jet " + std::to_string(k) +
                                 " violates its degree bound");
    }
    return D;
}

JetFunction DGenerator::apply(const JetFunction& f) const {
    return f.derivationApply([this](unsigned k) {
        if (k >= images.size())
            throw CutoffError("derivation table too small for jet " + std::to_string(k));
        return JetFunction(images[k]);
    });
}

} // namespace vlh
