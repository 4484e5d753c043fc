#include "vlh/genus.hpp"
#include "vlh/error.hpp"
#include "vlh/linsolve.hpp"

namespace vlh {

namespace {

// genus-0 t_m-derivative on the jet space
JetFunction dtm(unsigned m, const JetFunction& f) {
    return tDerivativeAlong(JetFunction(flow0(m)), f);
}

// deg/obar audit for a genus coefficient: every numerator term must sit in
// degree d relative to the denominator, with secondary degree <= obarCap.
void auditGrading(const JetFunction& f, int d, int obarCap, const std::string& what) {
    int denDeg = 0, denObar = 0;
    for (const auto& [fac, e] : f.den()) {
        if (!fac.isHomogeneous(fac.degMax()))
            throw InvariantError(what + ": inhomogeneous denominator factor");
        denDeg += (int)fac.degMax() * (int)e;
        denObar += fac.obarDegMax() * (int)e;
    }
    for (const auto& [m, c] : f.num().terms()) {
        if ((int)m.deg() - denDeg != d)
            throw InvariantError(what + ": degree " + std::to_string((int)m.deg() - denDeg) +
                                 " != " + std::to_string(d) + " at " + m.toString());
        if (m.obarDeg() - denObar > obarCap)
            throw InvariantError(what + ": secondary degree exceeds " + std::to_string(obarCap));
    }
    if (f.hasLog() && d != 0)
        throw InvariantError(what + ": log term in nonzero degree");
}

std::vector<JetFunction> fgAnsatz(unsigned g, unsigned vWiden) {
    // monomials in v_2..v_{3g-2} with sum (k-1) e_k <= 3g-3, completed by a
    // v_1 power fixing total degree 2g-2, optionally widened by v^j.
    std::vector<JetFunction> out;
    unsigned topJet = 3 * g - 2, obarCap = 3 * g - 3;
    std::map<unsigned, unsigned> exps;
    auto emit = [&]() {
        int deg = 0;
        for (const auto& [k, e] : exps) deg += (int)(k * e);
        int b = 2 * (int)g - 2 - deg;
        JetMonomial::Exps ex;
        for (const auto& [k, e] : exps)
            if (e) ex[k] = e;
        if (b > 0) ex[1] = (unsigned)b;
        for (unsigned j = 0; j <= vWiden; ++j) {
            JetMonomial::Exps exj = ex;
            if (j) exj[0] = j;
            DiffPoly num{JetMonomial(std::move(exj))};
            if (b < 0)
                out.push_back(JetFunction(num, {{DiffPoly::var(1), (unsigned)-b}}));
            else
                out.push_back(JetFunction(num));
        }
    };
    // depth-first over exponents of v_2..v_topJet under the obar budget
    auto rec = [&](auto&& self, unsigned k, unsigned obarLeft) -> void {
        if (k > topJet) { emit(); return; }
        unsigned maxE = obarLeft / (k - 1);
        for (unsigned e = 0; e <= maxE; ++e) {
            if (e) exps[k] = e; else exps.erase(k);
            self(self, k + 1, obarLeft - e * (k - 1));
        }
        exps.erase(k);
    };
    rec(rec, 2, obarCap);
    return out;
}

// Collect the linear equations "coefficient of every jet monomial of
// resid.num() vanishes" in the unknowns named in unknowns[].
void appendEquations(const JetFunction& resid,
                     const std::vector<std::string>& unknowns,
                     std::vector<std::vector<Rat>>& rows,
                     std::vector<ParamPoly>& rhs) {
    if (resid.hasLog())
        throw InvariantError("constraint residual acquired a log term");
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < unknowns.size(); ++i) index[unknowns[i]] = i;
    for (const auto& [mono, c] : resid.num().terms())
        appendLinearEquations(c, index, rows, rhs);
}

// The quadratic source of the recursion at genus g, s-order l (the terms
// beyond D(H_g^{[l-1]})), given the rows of lower genera.
JetFunction crossSource(const OperatorSpec& op, unsigned g, unsigned l,
                        const std::map<unsigned, std::vector<JetFunction>>& rows,
                        std::map<std::tuple<unsigned, unsigned, unsigned>, JetFunction>& dtCache) {
    auto dt = [&](unsigned m, unsigned k, unsigned r) -> const JetFunction& {
        auto key = std::make_tuple(m, k, r);
        auto it = dtCache.find(key);
        if (it == dtCache.end())
            it = dtCache.emplace(key, dtm(m, rows.at(k)[r])).first;
        return it->second;
    };
    JetFunction out;
    for (const auto& [pairKey, total] : op.quadA) {
        for (auto [m, mp] : {std::pair{pairKey.first, pairKey.second},
                             std::pair{pairKey.second, pairKey.first}}) {
            ParamPoly a = op.aSym(m, mp);
            if (a.isZero()) continue;
            JetFunction acc;
            if (g == 1) {
                if (l == 1) acc += JetFunction(omega0(m, mp));
            } else {
                for (unsigned k = 1; k + 1 <= g; ++k) {
                    const auto& rk = rows.at(k);
                    const auto& rgk = rows.at(g - k);
                    for (unsigned r = 0; r < l; ++r) {
                        unsigned rp = l - 1 - r;
                        if (r >= rk.size() || rp >= rgk.size()) continue;
                        acc += dt(m, k, r) * dtm(mp, rgk[rp]);
                    }
                }
                const auto& prev = rows.at(g - 1);
                if (l - 1 < prev.size())
                    acc += dtm(m, dt(mp, g - 1, l - 1));
            }
            acc *= a;
            out += acc;
            if (pairKey.first == pairKey.second) break; // diagonal: one orientation
        }
    }
    if (g == 1 && l == 1)
        out += JetFunction(op.constTerm); // scalar part enters at this level
    return out;
}

unsigned crossSupport(unsigned g, const std::map<unsigned, std::vector<JetFunction>>& rows) {
    if (g == 1) return 0;
    unsigned s = 0;
    for (unsigned k = 1; k + 1 <= g; ++k)
        s = std::max(s, (unsigned)(rows.at(k).size() - 1 + rows.at(g - k).size() - 1));
    s = std::max(s, (unsigned)(rows.at(g - 1).size() - 1));
    return s;
}

JetFunction solveFgImpl(unsigned g, unsigned vWiden) {
    std::vector<JetFunction> basis = fgAnsatz(g, vWiden);
    std::vector<std::string> names;
    for (size_t i = 0; i < basis.size(); ++i)
        names.push_back("_c" + std::to_string(i));
    JetFunction cand;
    for (size_t i = 0; i < basis.size(); ++i)
        cand += ParamPoly::param(names[i]) * basis[i];

    std::map<unsigned, std::vector<JetFunction>> rows;
    for (unsigned k = 1; k < g; ++k) rows[k] = {solveFg(k)};
    rows[g] = {cand};

    std::vector<std::vector<Rat>> M;
    std::vector<ParamPoly> rhs;
    unsigned K = 3 * g;
    for (int i = -1; i <= 2 * (int)g; ++i) {
        OperatorSpec Li = extractLike(i, 0, 2 * g + 4);
        DGenerator D = makeD(Li, K);
        std::map<std::tuple<unsigned, unsigned, unsigned>, JetFunction> dtCache;
        JetFunction resid = D.apply(cand) + crossSource(Li, g, 1, rows, dtCache);
        appendEquations(resid, names, M, rhs);
    }
    LinearSolution sol = solveLinear(std::move(M), std::move(rhs));
    if (sol.kernelDim != 0)
        throw SolveError("free-energy ansatz underdetermined at genus " + std::to_string(g));
    JetFunction out;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (!sol.x[i].isConstant())
            throw InvariantError("non-constant free-energy coefficient");
        out += sol.x[i].asConstant() * basis[i];
    }
    return out;
}

} // namespace

JetFunction DeformationData::H(unsigned g) const {
    JetFunction out;
    auto it = coeffs.find(g);
    if (it == coeffs.end()) return out;
    for (size_t l = 0; l < it->second.size(); ++l)
        out += ParamPoly::param(sName, (unsigned)l) * it->second[l];
    return out;
}

std::map<unsigned, JetFunction> DeformationData::assembled() const {
    std::map<unsigned, JetFunction> out;
    for (const auto& [g, row] : coeffs) out[g] = H(g);
    return out;
}

JetFunction DeformationData::coeff(unsigned g, unsigned l) const {
    auto it = coeffs.find(g);
    if (it == coeffs.end() || l >= it->second.size()) return JetFunction();
    return it->second[l];
}

unsigned DeformationData::sDegree(unsigned g) const {
    auto it = coeffs.find(g);
    if (it == coeffs.end()) return 0;
    for (size_t l = it->second.size(); l-- > 0;)
        if (!it->second[l].isZero()) return (unsigned)l;
    return 0;
}

JetFunction solveFg(unsigned g) {
    if (g == 0)
        throw UnsupportedInputError("genus 0 is not a jet function");
    if (g == 1) return genusOneFreeEnergy();
    static std::map<unsigned, JetFunction> cache;
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    JetFunction out;
    try {
        out = solveFgImpl(g, 0);
    } catch (const SolveError&) {
        // widen the ansatz by low powers of v and retry once
        out = solveFgImpl(g, 2);
    }
    auditGrading(out, 2 * (int)g - 2, 3 * (int)g - 3, "free energy genus " + std::to_string(g));
    cache.emplace(g, out);
    return out;
}

DeformationData deform(const OperatorSpec& op, unsigned Gmax,
                       unsigned sDegCap, const std::string& sName,
                       const std::map<unsigned, JetFunction>* initial) {
    DeformationData out;
    out.op = op;
    out.Gmax = Gmax;
    out.sDegCap = sDegCap;
    out.sName = sName;
    DGenerator D = makeD(op, 3 * Gmax + 4);
    std::map<unsigned, std::vector<JetFunction>> rows;
    std::map<std::tuple<unsigned, unsigned, unsigned>, JetFunction> dtCache;

    for (unsigned g = 1; g <= Gmax; ++g) {
        JetFunction init = initial && initial->count(g) ? initial->at(g) : solveFg(g);
        rows[g] = {init};
        auto& row = rows[g];
        unsigned cap = sDegCap ? sDegCap : 4 * g;
        bool terminated = false;
        for (unsigned l = 1; l <= cap; ++l) {
            JetFunction rhs = D.apply(row[l - 1]) + crossSource(op, g, l, rows, dtCache);
            rhs *= Rat(1, (long)l);
            row.push_back(rhs);
            if (rhs.isZero() && l > crossSupport(g, rows)) { terminated = true; break; }
        }
        while (!row.empty() && row.back().isZero()) row.pop_back();
        out.truncatedFlags[g] = !terminated;
        for (size_t l = 0; l < row.size(); ++l)
            auditGrading(row[l], 2 * (int)g - 2, 3 * (int)g - 3,
                         "H_" + std::to_string(g) + " s^" + std::to_string(l));
        out.coeffs[g] = row;
    }
    return out;
}

std::map<unsigned, JetFunction>
compose(const std::vector<std::pair<OperatorSpec, ParamPoly>>& sequence,
        unsigned Gmax, unsigned sDegCap) {
    std::map<unsigned, JetFunction> current;
    bool haveInitial = false;
    const std::string stage = "_sC";
    for (const auto& [op, sval] : sequence) {
        DeformationData d = deform(op, Gmax, sDegCap, stage,
                                   haveInitial ? &current : nullptr);
        std::map<unsigned, JetFunction> next;
        for (unsigned g = 1; g <= Gmax; ++g)
            next[g] = d.H(g).substParam(stage, sval);
        current = std::move(next);
        haveInitial = true;
    }
    if (!haveInitial)
        for (unsigned g = 1; g <= Gmax; ++g) current[g] = solveFg(g);
    return current;
}

} // namespace vlh
