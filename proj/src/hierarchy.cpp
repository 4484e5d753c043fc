#include "vlh/hierarchy.hpp"
#include "vlh/error.hpp"
#include "vlh/linsolve.hpp"

#include <algorithm>
#include <set>

namespace vlh {

namespace {

JetFunction identityJet() { return JetFunction(DiffPoly::var(0)); }

JetFunction dtm0(unsigned m, const JetFunction& f) {
    return tDerivativeAlong(JetFunction(flow0(m)), f);
}

// t_q-derivative of a Miura density along the given flow series (flow is
// the series for the time derivative of the dependent variable).
EpsSeries dtDensity(const EpsSeries& flow, const MiuraDensity& A) {
    EpsSeries out(flow.cap());
    unsigned J = std::max(A.value.maxJet(), 0u);
    EpsSeries d = flow;
    for (unsigned j = 0;; ++j) {
        JetFunction pj = A.jetPartial(j);
        if (!pj.isZero()) {
            EpsSeries t = d;
            t *= pj;
            out += t;
        }
        if (j >= J) break;
        d = d.dx();
    }
    return out;
}

HierarchyTable truncateTable(const HierarchyTable& h, unsigned Gmax) {
    HierarchyTable out;
    out.Gmax = Gmax;
    for (const auto& [key, s] : h.omega)
        out.omega.emplace(key, s.truncated(2 * Gmax));
    return out;
}

// Coefficient function of w_0 multiplying the jet monomial pattern mu in c,
// for c whose denominator depends on w_0 only.  Every numerator term must
// match one of the keys of `patterns`; results accumulate there.
void splitByPattern(const JetFunction& c,
                    std::map<JetMonomial, JetFunction>& patterns,
                    const std::string& what) {
    DiffPoly d = c.denProduct();
    for (unsigned k = 1; k <= d.maxJet(); ++k)
        if (d.dependsOnJet(k))
            throw InvariantError(what + ": denominator depends on jet " + std::to_string(k));
    for (const auto& [m, coeff] : c.num().terms()) {
        JetMonomial::Exps jetPart = m.exps();
        unsigned e0 = 0;
        if (auto it = jetPart.find(0); it != jetPart.end()) {
            e0 = it->second;
            jetPart.erase(it);
        }
        auto slot = patterns.find(JetMonomial(jetPart));
        if (slot == patterns.end())
            throw InvariantError(what + ": unexpected monomial " + m.toString());
        JetMonomial::Exps w0;
        if (e0) w0[0] = e0;
        DiffPoly piece{JetMonomial(std::move(w0))};
        piece *= coeff;
        slot->second += JetFunction(piece, c.den());
    }
}

} // namespace

const EpsSeries& HierarchyTable::at(unsigned p, unsigned q) const {
    auto key = std::minmax(p, q);
    auto it = omega.find({key.first, key.second});
    if (it == omega.end())
        throw UnsupportedInputError("two-point entry (" + std::to_string(p) + "," +
                                    std::to_string(q) + ") not assembled");
    return it->second;
}

bool HierarchyTable::has(unsigned p, unsigned q) const {
    auto key = std::minmax(p, q);
    return omega.count({key.first, key.second}) != 0;
}

void HierarchyTable::set(unsigned p, unsigned q, EpsSeries s) {
    auto key = std::minmax(p, q);
    omega[{key.first, key.second}] = std::move(s);
}

JetFunction MiuraDensity::jetPartial(unsigned k) const {
    JetFunction out = value.jetPartial(k);
    if (k == 0 && hasLog())
        out += logCoeff * (JetFunction(logArg.jetPartial(0)) *
                           JetFunction::reciprocal(logArg));
    return out;
}

JetFunction MiuraDensity::dxValue() const {
    JetFunction out = value.dx();
    if (hasLog())
        out += logCoeff * (JetFunction(logArg.dx()) *
                           JetFunction::reciprocal(logArg));
    return out;
}

EpsSeries invertBase(const EpsSeries& base) {
    unsigned cap = base.cap();
    EpsSeries id(identityJet(), cap);
    EpsSeries inv = id;
    for (unsigned n = 0; n <= cap / 2 + 1; ++n) {
        JetSubstitution s(inv);
        EpsSeries resid = s.apply(base) - id;
        if (resid.isZero()) return inv;
        inv -= resid;
    }
    throw InvariantError("change of dependent variable failed to invert");
}

QuasiMiura quasiMiura(const std::map<unsigned, JetFunction>& H, unsigned Gmax) {
    QuasiMiura qm;
    qm.forward = EpsSeries(identityJet(), 2 * Gmax);
    for (const auto& [g, Hg] : H) {
        if (g == 0 || 2 * g > 2 * Gmax) continue;
        qm.forward.setCoeff(2 * g, Hg.dxPow(2));
    }
    qm.inverse = invertBase(qm.forward);
    return qm;
}

HierarchyTable buildHierarchy(const std::map<unsigned, JetFunction>& H,
                              unsigned Gmax, unsigned Mmax, unsigned Pmax) {
    unsigned cap = 2 * Gmax;
    QuasiMiura qm = quasiMiura(H, Gmax);
    JetSubstitution inv(qm.inverse);
    HierarchyTable t;
    t.Gmax = Gmax;
    std::vector<std::pair<unsigned, unsigned>> keys;
    for (unsigned m = 0; m <= std::max(Mmax, Pmax); ++m) keys.push_back({0, m});
    for (unsigned p = 1; p <= Pmax; ++p)
        for (unsigned q = p; q <= Pmax; ++q) keys.push_back({p, q});
    for (auto [p, q] : keys) {
        EpsSeries flat(cap);
        flat.setCoeff(0, JetFunction(omega0(p, q)));
        for (const auto& [g, Hg] : H) {
            if (g == 0 || 2 * g > cap) continue;
            flat.setCoeff(2 * g, dtm0(p, dtm0(q, Hg)));
        }
        t.set(p, q, inv.apply(flat));
    }
    if (!t.at(0, 0).agreesWith(EpsSeries(identityJet(), cap)))
        throw InvariantError("zeroth flow density is not the dependent variable");
    return t;
}

HierarchyTable applyNormalMiura(const HierarchyTable& h,
                                const std::vector<MiuraDensity>& A) {
    unsigned cap = h.epsCap();
    EpsSeries id(identityJet(), cap);
    EpsSeries fwd = id;
    for (size_t k = 0; k < A.size(); ++k) {
        JetFunction dA = A[k].dxValue();
        if (dA.isZero()) continue;
        fwd += EpsSeries::monomial(2 * (unsigned)k + 2, dA.dx(), cap);
    }
    EpsSeries inv = invertBase(fwd);
    JetSubstitution invSub(inv);
    HierarchyTable out;
    out.Gmax = h.Gmax;
    for (const auto& [key, omega] : h.omega) {
        auto [p, q] = key;
        EpsSeries total = omega;
        for (size_t k = 0; k < A.size(); ++k) {
            if (A[k].value.isZero() && !A[k].hasLog()) continue;
            EpsSeries dq = dtDensity(h.at(0, q).dx(), A[k]);
            EpsSeries dpdq = tDerivativeAlong(h.at(0, p).dx(), dq);
            total += dpdq.shifted(2 * (unsigned)k + 2);
        }
        out.omega.emplace(key, invSub.apply(total));
    }
    if (out.has(0, 0) &&
        !out.at(0, 0).agreesWith(EpsSeries(identityJet(), cap)))
        throw InvariantError("transformation broke the zeroth flow density");
    return out;
}

HierarchyTable rescaleEps(const HierarchyTable& h, const Rat& factor) {
    HierarchyTable out;
    out.Gmax = h.Gmax;
    for (const auto& [key, omega] : h.omega) {
        EpsSeries s(omega.cap());
        for (const auto& [n, c] : omega.coeffs()) {
            if (n % 2 != 0)
                throw InvariantError("odd dispersion order in two-point entry");
            s.setCoeff(n, ratPow(factor, n / 2) * c);
        }
        out.omega.emplace(key, std::move(s));
    }
    return out;
}

HierarchyTable reparamFlows(const HierarchyTable& h,
                            const std::map<unsigned, std::map<unsigned, Rat>>& M) {
    HierarchyTable out;
    out.Gmax = h.Gmax;
    for (const auto& [p, rowp] : M)
        for (const auto& [q, rowq] : M) {
            if (q < p) continue;
            bool complete = true;
            for (const auto& [r, cp] : rowp)
                for (const auto& [rp, cq] : rowq)
                    if (!h.has(r, rp)) complete = false;
            if (!complete) continue; // only recombine what was assembled
            EpsSeries acc(h.epsCap());
            for (const auto& [r, cp] : rowp)
                for (const auto& [rp, cq] : rowq) {
                    EpsSeries t = h.at(r, rp);
                    t *= cp * cq;
                    acc += t;
                }
            out.set(p, q, std::move(acc));
        }
    return out;
}

namespace {

// Jet monomials of degree `deg` in jets >= 1.
void jetMonomials(unsigned deg, unsigned k, JetMonomial::Exps& cur,
                  std::vector<JetMonomial::Exps>& out) {
    if (deg == 0) {
        out.push_back(cur);
        return;
    }
    if (k == 0) return;
    for (unsigned e = 0; e * k <= deg; ++e) {
        if (e) cur[k] = e;
        jetMonomials(deg - e * k, k - 1, cur, out);
        cur.erase(k);
    }
}

bool forbiddenMonomial(const JetMonomial& m, unsigned g) {
    if (g == 1) return m.exp(1) > 0 || (m.exp(2) > 0 && m.exp(0) > 0);
    return m.exp(2) > 0;
}

std::vector<std::string> paramNamesOf(const HierarchyTable& h) {
    std::set<std::string> names;
    for (const auto& [key, s] : h.omega)
        for (const auto& [n, c] : s.coeffs())
            for (const auto& [m, coeff] : c.num().terms())
                for (const auto& [pm, r] : coeff.terms())
                    for (const auto& [name, e] : pm) names.insert(name);
    return {names.begin(), names.end()};
}

// Solve for the density A_{g-1} that removes the disallowed monomials from
// the eps^{2g} coefficient of omega(0,1); returns the density and the
// kernel dimension of the elimination system.
//
// The linear map splits as L0 + L1, where L0 comes from the parameter-free
// part of the hierarchy and L1 carries a positive power of some parameter.
// L0 acts identically on each parameter monomial, so one rational matrix
// serves every correction stage; L1 feedback only raises the parameter
// degree, so repeated exact solves terminate.
std::pair<MiuraDensity, unsigned>
eliminationStep(const HierarchyTable& cur, unsigned g) {
    const JetFunction& c0 = cur.at(0, 1).coeff(2 * g);
    if (!c0.isPolynomial())
        throw UnsupportedInputError("cannot reduce a non-polynomial coefficient");

    HierarchyTable work = truncateTable(cur, g);
    HierarchyTable base = work;
    for (const auto& name : paramNamesOf(base)) {
        HierarchyTable t;
        t.Gmax = base.Gmax;
        for (const auto& [key, s] : base.omega)
            t.omega.emplace(key, s.substParam(name, ParamPoly()));
        base = std::move(t);
    }

    unsigned w0cap = 0;
    for (const auto& [m, coeff] : c0.num().terms())
        w0cap = std::max(w0cap, m.exp(0));
    w0cap += 2;

    for (unsigned attempt = 0;; ++attempt) {
        std::vector<JetMonomial::Exps> jets;
        JetMonomial::Exps scratch;
        jetMonomials(2 * g - 2, 2 * g - 2, scratch, jets);
        std::vector<DiffPoly> basis;
        for (const auto& jm : jets)
            for (unsigned e0 = 0; e0 <= w0cap; ++e0) {
                JetMonomial::Exps ex = jm;
                if (e0) ex[0] = e0;
                basis.push_back(DiffPoly{JetMonomial(std::move(ex))});
            }

        // matrix of L0 on the forbidden monomials
        std::map<std::string, size_t> index;
        MiuraDensity ansatz;
        for (size_t i = 0; i < basis.size(); ++i) {
            std::string name = "_nf" + std::to_string(i);
            index[name] = i;
            ansatz.value += ParamPoly::param(name) * JetFunction(basis[i]);
        }
        std::vector<MiuraDensity> slots(g);
        slots[g - 1] = ansatz;
        JetFunction probe = applyNormalMiura(base, slots).at(0, 1).coeff(2 * g);
        if (!probe.isPolynomial())
            throw InvariantError("elimination probe left the polynomial ring");

        std::map<JetMonomial, size_t> rowIndex;
        std::vector<std::vector<Rat>> M;
        auto rowFor = [&](const JetMonomial& m) -> size_t {
            auto it = rowIndex.find(m);
            if (it != rowIndex.end()) return it->second;
            size_t r = M.size();
            rowIndex.emplace(m, r);
            M.emplace_back(basis.size(), Rat(0));
            return r;
        };
        for (const auto& [m, coeff] : probe.num().terms()) {
            if (!forbiddenMonomial(m, g)) continue;
            size_t r = rowFor(m);
            for (const auto& [pm, rat] : coeff.terms()) {
                if (pm.size() != 1 || pm.begin()->second != 1) continue;
                auto it = index.find(pm.begin()->first);
                if (it != index.end()) M[r][it->second] += rat;
            }
        }

        // stage-by-stage correction of the actual (parameter-laden) table
        try {
            MiuraDensity total;
            unsigned kernelDim = 0;
            bool haveKernel = false;
            for (unsigned round = 0;; ++round) {
                if (round > 4 * g + 8)
                    throw InvariantError("elimination failed to terminate");
                std::vector<MiuraDensity> cs(g);
                cs[g - 1] = total;
                JetFunction ct = applyNormalMiura(work, cs).at(0, 1).coeff(2 * g);
                if (!ct.isPolynomial())
                    throw InvariantError("elimination left the polynomial ring");
                // group the forbidden residual by its parameter monomial
                std::map<ParamPoly::Mono, std::vector<ParamPoly>> residuals;
                for (const auto& [m, coeff] : ct.num().terms()) {
                    if (!forbiddenMonomial(m, g)) continue;
                    size_t r = rowFor(m); // may extend M with zero rows
                    for (const auto& [pm, rat] : coeff.terms()) {
                        auto& v = residuals[pm];
                        if (v.empty()) v.assign(M.size(), ParamPoly());
                        if (v.size() < M.size()) v.resize(M.size(), ParamPoly());
                        v[r] += ParamPoly(rat);
                    }
                }
                if (residuals.empty()) {
                    return {total, kernelDim};
                }
                for (auto& [pm, rhs] : residuals) {
                    rhs.resize(M.size(), ParamPoly());
                    for (auto& row : M) row.resize(basis.size(), Rat(0));
                    std::vector<ParamPoly> negated;
                    for (auto& e : rhs) negated.push_back(-e);
                    LinearSolution sol = solveLinear(M, std::move(negated));
                    if (!haveKernel) {
                        kernelDim = sol.kernelDim;
                        haveKernel = true;
                    }
                    ParamPoly mono(1);
                    for (const auto& [name, e] : pm)
                        mono *= ParamPoly::param(name, e);
                    for (size_t i = 0; i < basis.size(); ++i) {
                        if (sol.x[i].isZero()) continue;
                        JetFunction add(basis[i]);
                        add *= sol.x[i] * mono;
                        total.value += add;
                    }
                }
            }
        } catch (const SolveError&) {
            if (attempt >= 2) throw;
            w0cap += 2; // widen the density ansatz and retry
        }
    }
}

} // namespace

NormalForm normalForm(const HierarchyTable& h, unsigned Gmax) {
    if (Gmax > 4)
        throw UnsupportedInputError("standard monomial pattern is fixed through order 8 only");
    HierarchyTable cur;
    cur.Gmax = Gmax;
    cur.set(0, 0, h.at(0, 0).truncated(2 * Gmax));
    cur.set(0, 1, h.at(0, 1).truncated(2 * Gmax));

    NormalForm nf;
    for (unsigned g = 1; g <= Gmax; ++g) {
        const JetFunction& c = cur.at(0, 1).coeff(2 * g);
        bool clean = true;
        for (const auto& [m, coeff] : c.num().terms()) {
            if (g == 1 ? (m.exp(1) > 0 || (m.exp(2) > 0 && m.exp(0) > 0))
                       : m.exp(2) > 0) {
                clean = false;
                break;
            }
        }
        MiuraDensity density;
        unsigned kdim = 0;
        if (!clean) {
            std::tie(density, kdim) = eliminationStep(cur, g);
            std::vector<MiuraDensity> slots(g);
            slots[g - 1] = density;
            cur = applyNormalMiura(cur, slots);
        }
        nf.densities.push_back(density);
        nf.kernelDims.push_back(kdim);
    }

    if (!(cur.at(0, 1).coeff(0) == JetFunction(omega0(0, 1))))
        throw InvariantError("dispersionless part of the first flow is not w^2/2");

    // read off the coefficient functions against the standard pattern
    static const std::vector<std::vector<std::pair<JetMonomial::Exps, int>>> pattern = {
        // order 2: a_0 (index 0 => a)
        {{{{2, 1}}, 0}},
        // order 4
        {{{{4, 1}}, 0}, {{{3, 1}, {1, 1}}, 1}, {{{1, 4}}, 2}},
        // order 6
        {{{{5, 1}, {1, 1}}, 0}, {{{6, 1}}, 3}, {{{4, 1}, {1, 2}}, 4},
         {{{3, 1}, {1, 3}}, 5}, {{{3, 2}}, 6}, {{{1, 6}}, 7}},
        // order 8
        {{{{6, 1}, {1, 2}}, 0}, {{{8, 1}}, 8}, {{{7, 1}, {1, 1}}, 9},
         {{{5, 1}, {3, 1}}, 10}, {{{5, 1}, {1, 3}}, 11}, {{{4, 2}}, 12},
         {{{4, 1}, {3, 1}, {1, 1}}, 13}, {{{4, 1}, {1, 4}}, 14},
         {{{3, 2}, {1, 2}}, 15}, {{{3, 1}, {1, 5}}, 16}, {{{1, 8}}, 17}},
    };
    nf.a.assign(Gmax, JetFunction());
    for (unsigned g = 1; g <= Gmax; ++g) {
        std::map<JetMonomial, JetFunction> slots;
        std::map<JetMonomial, int> labels;
        for (const auto& [ex, lab] : pattern[g - 1]) {
            JetMonomial::Exps e = ex;
            slots[JetMonomial(std::move(e))] = JetFunction();
            JetMonomial::Exps e2 = ex;
            labels[JetMonomial(std::move(e2))] = lab;
        }
        splitByPattern(cur.at(0, 1).coeff(2 * g), slots,
                       "order-" + std::to_string(2 * g) + " coefficient");
        for (const auto& [mono, f] : slots) {
            int lab = labels.at(mono);
            if (lab == 0)
                nf.a[g - 1] = f;
            else
                nf.b[(unsigned)lab] = f;
        }
    }
    if (!nf.a.empty() && !nf.a[0].isZero() && !nf.a[0].isScalar())
        throw InvariantError("second-order coefficient is not constant");
    return nf;
}

} // namespace vlh
