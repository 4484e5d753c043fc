#include "vlh/verify.hpp"
#include "vlh/error.hpp"
#include "vlh/expr.hpp"
#include "vlh/linsolve.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace vlh {

bool Report::pass() const {
    for (const auto& c : checks)
        if (c.status == CheckResult::FAIL) return false;
    return true;
}

void Report::add(const std::string& name, bool ok, const std::string& witness) {
    checks.push_back({name, ok ? CheckResult::PASS : CheckResult::FAIL,
                      ok ? std::string() : witness});
}

void Report::skip(const std::string& name, const std::string& why) {
    checks.push_back({name, CheckResult::SKIP, why});
}

void Report::merge(const Report& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
}

std::string Report::toText() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.status == CheckResult::PASS   ? "PASS"
               : c.status == CheckResult::FAIL ? "FAIL"
                                               : "SKIP")
           << "  " << c.name;
        if (!c.witness.empty()) os << "  [" << c.witness << "]";
        os << "\n";
    }
    return os.str();
}

namespace {

std::string firstDifference(const EpsSeries& a, const EpsSeries& b) {
    EpsSeries d = a - b;
    for (const auto& [n, c] : d.coeffs())
        if (!c.isZero())
            return "eps^" + std::to_string(n) + ": " + c.toString("w");
    return "";
}

} // namespace

Report verifyCommutativity(const HierarchyTable& h,
                           const std::vector<std::pair<unsigned, unsigned>>& pairs,
                           unsigned G) {
    Report r;
    for (auto [p, q] : pairs) {
        std::string name = "commutativity(" + std::to_string(p) + "," +
                           std::to_string(q) + ")";
        if (!h.has(0, p) || !h.has(0, q)) {
            r.skip(name, "flows not assembled");
            continue;
        }
        EpsSeries fp = h.at(0, p).truncated(2 * G).dx();
        EpsSeries fq = h.at(0, q).truncated(2 * G).dx();
        EpsSeries d = tDerivativeAlong(fp, fq) - tDerivativeAlong(fq, fp);
        r.add(name, d.isZero(), firstDifference(d, EpsSeries(d.cap())));
    }
    return r;
}

Report verifyTauStructure(const HierarchyTable& h, unsigned G) {
    Report r;
    EpsSeries id(JetFunction(DiffPoly::var(0)), 2 * G);
    r.add("zeroth flow density is w",
          h.has(0, 0) && h.at(0, 0).truncated(2 * G).agreesWith(id),
          h.has(0, 0) ? firstDifference(h.at(0, 0).truncated(2 * G), id)
                      : "entry missing");

    // flows available in the table
    std::vector<unsigned> flows;
    for (const auto& [key, s] : h.omega)
        if (key.first == 0) flows.push_back(key.second);

    for (unsigned m : flows)
        for (unsigned mp : flows) {
            std::string name = "exactness of d_t" + std::to_string(mp) +
                               " omega(0," + std::to_string(m) + ")";
            EpsSeries dt = tDerivativeAlong(h.at(0, mp).truncated(2 * G).dx(),
                                            h.at(0, m).truncated(2 * G));
            bool ok = true, skip = false;
            std::string witness;
            for (const auto& [n, c] : dt.coeffs()) {
                if (!c.isPolynomial()) {
                    skip = true;
                    continue;
                }
                DiffPoly e = variationalDerivative(c.asDiffPoly());
                if (!e.isZero()) {
                    ok = false;
                    witness = "eps^" + std::to_string(n) +
                              " Euler residual " + e.toString("w");
                    break;
                }
            }
            if (!ok) r.add(name, false, witness);
            else if (skip) r.skip(name, "non-polynomial coefficient");
            else r.add(name, true);
        }

    // total symmetry of d_{t_p} omega(q,r)
    for (unsigned p : flows)
        for (unsigned q : flows) {
            if (q <= p) continue;
            for (const auto& [key, s] : h.omega) {
                unsigned rr = key.second;
                if (!h.has(q, rr) || !h.has(p, rr)) continue;
                if (key.first != std::min(p, rr) && key.first != std::min(q, rr))
                    continue;
                EpsSeries a = tDerivativeAlong(h.at(0, p).truncated(2 * G).dx(),
                                               h.at(q, rr).truncated(2 * G));
                EpsSeries b = tDerivativeAlong(h.at(0, q).truncated(2 * G).dx(),
                                               h.at(p, rr).truncated(2 * G));
                std::string name = "symmetry of d_t omega at (" +
                                   std::to_string(p) + "," + std::to_string(q) +
                                   ";" + std::to_string(rr) + ")";
                r.add(name, a.agreesWith(b), firstDifference(a, b));
            }
        }
    return r;
}

Report verifyPolynomiality(const HierarchyTable& h, unsigned G) {
    Report r;
    for (const auto& [key, s] : h.omega) {
        std::string name = "polynomiality of omega(" + std::to_string(key.first) +
                           "," + std::to_string(key.second) + ")";
        bool ok = true;
        std::string witness;
        for (const auto& [n, c] : s.coeffs()) {
            if (n > 2 * G) break;
            if (!c.isPolynomial()) {
                ok = false;
                witness = "eps^" + std::to_string(n) + " has denominator " +
                          c.denProduct().toString("w");
                break;
            }
        }
        r.add(name, ok, witness);
    }
    return r;
}

Report verifyGradings(const HierarchyTable& h, unsigned G) {
    Report r;
    for (const auto& [key, s] : h.omega) {
        std::string name = "grading of omega(" + std::to_string(key.first) + "," +
                           std::to_string(key.second) + ")";
        bool ok = true;
        std::string witness;
        for (const auto& [n, c] : s.coeffs()) {
            if (n > 2 * G) break;
            int denDeg = 0;
            for (const auto& [fac, e] : c.den())
                denDeg += (int)fac.degMax() * (int)e;
            for (const auto& [m, coeff] : c.num().terms()) {
                if ((int)m.deg() - denDeg != (int)n) {
                    ok = false;
                    witness = "eps^" + std::to_string(n) + " term " +
                              m.toString("w") + " has degree " +
                              std::to_string((int)m.deg() - denDeg);
                }
            }
            if (c.hasLog() && n != 0) {
                ok = false;
                witness = "log term at eps^" + std::to_string(n);
            }
        }
        r.add(name, ok, witness);
    }
    return r;
}

Report verifyGradings(const DeformationData& d) {
    Report r;
    for (const auto& [g, row] : d.coeffs) {
        std::string name = "grading of the genus-" + std::to_string(g) + " coefficients";
        bool ok = true;
        std::string witness;
        for (const auto& f : row) {
            int denDeg = 0, denObar = 0;
            for (const auto& [fac, e] : f.den()) {
                denDeg += (int)fac.degMax() * (int)e;
                denObar += fac.obarDegMax() * (int)e;
            }
            for (const auto& [m, coeff] : f.num().terms()) {
                if ((int)m.deg() - denDeg != 2 * (int)g - 2 ||
                    m.obarDeg() - denObar > 3 * (int)g - 3) {
                    ok = false;
                    witness = "term " + m.toString();
                }
            }
        }
        r.add(name, ok, witness);
    }
    return r;
}

namespace {

using nlohmann::json;

json loadJson(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UnsupportedInputError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

JetFunction parseW(const json& j) { return parseExpr(j.get<std::string>(), nullptr, "w"); }
JetFunction parseV(const json& j) { return parseExpr(j.get<std::string>(), nullptr, "v"); }

// value at the origin of the jet space (all jets zero)
JetFunction valueAtZero(const JetFunction& f) {
    ParamPoly n0 = f.num().constantCoeff();
    if (n0.isZero()) return JetFunction();
    Rat d0(1);
    for (const auto& [fac, e] : f.den()) {
        ParamPoly c0 = fac.constantCoeff();
        if (!c0.isConstant() || c0.asConstant() == 0)
            throw SingularSubstitutionError("denominator vanishes at the origin");
        for (unsigned k = 0; k < e; ++k) d0 *= c0.asConstant();
    }
    n0 *= Rat(1) / d0;
    return JetFunction(n0);
}

std::string show(const JetFunction& f, const char* nm = "v") { return f.toString(nm); }

// Dimension of the space of normal-Miura reparametrizations, with Laurent
// coefficients in w_0, that fix the fourth-order coefficients and keep the
// sixth order inside the standard-form pattern.  Zero means the reduced
// standard form is rigid: a_2, b_3, ... carry no residual freedom.
unsigned residualGaugeDimension(const HierarchyTable& reduced) {
    auto laurent = [](JetMonomial::Exps jm, int e) {
        if (e > 0) jm[0] = (unsigned)e;
        DiffPoly num{JetMonomial(jm)};
        if (e >= 0) return JetFunction(num);
        return JetFunction(num, {{DiffPoly::var(0), (unsigned)(-e)}});
    };
    std::vector<std::pair<JetFunction, int>> cols;
    for (JetMonomial::Exps jm : {JetMonomial::Exps{{2, 1}}, JetMonomial::Exps{{1, 2}}})
        for (int e = -8; e <= 4; ++e) cols.push_back({laurent(jm, e), 1});
    for (JetMonomial::Exps jm :
         {JetMonomial::Exps{{4, 1}}, JetMonomial::Exps{{3, 1}, {1, 1}},
          JetMonomial::Exps{{2, 2}}, JetMonomial::Exps{{2, 1}, {1, 2}},
          JetMonomial::Exps{{1, 4}}})
        for (int e = -10; e <= 4; ++e) cols.push_back({laurent(jm, e), 2});

    // the transformed table is linear in the densities through eps^6
    std::map<std::string, size_t> idx;
    JetFunction probe4, probe6;
    for (size_t i = 0; i < cols.size(); ++i) {
        std::vector<MiuraDensity> slots(3);
        slots[cols[i].second].value = cols[i].first;
        HierarchyTable t = applyNormalMiura(reduced, slots);
        std::string nm = "_rg" + std::to_string(i);
        idx[nm] = i;
        probe4 += ParamPoly::param(nm) *
                  (t.at(0, 1).coeff(4) - reduced.at(0, 1).coeff(4));
        probe6 += ParamPoly::param(nm) *
                  (t.at(0, 1).coeff(6) - reduced.at(0, 1).coeff(6));
    }
    std::vector<std::vector<Rat>> rows;
    std::vector<ParamPoly> rhs;
    for (const auto& [m, c] : probe4.num().terms())
        appendLinearEquations(c, idx, rows, rhs);
    unsigned N = 0;
    for (const auto& [f, p] : probe6.den()) N += p;
    for (const auto& [m, c] : probe6.num().terms())
        if (m.exp(2) > 0 || m.exp(0) < N)
            appendLinearEquations(c, idx, rows, rhs);
    return solveLinear(rows, std::move(rhs)).kernelDim;
}

} // namespace

Report referenceSuite(const std::string& dataDir) {
    constexpr unsigned SRC = 24;
    Report r;

    // operator anchor
    {
        json j = loadJson(dataDir + "/l22_operator.json");
        OperatorSpec L22 = extractLike(2, 1, 10);
        bool ok = true;
        std::string witness;
        for (const auto& [key, val] : j.at("flow_coefficients").items()) {
            unsigned p = (unsigned)std::stoul(key);
            ParamPoly expect = parseV(val).asScalar();
            if (L22.bCoeff(p + 2, p) != expect) {
                ok = false;
                witness = "source " + key;
            }
        }
        ParamPoly a01 = parseV(j.at("second_order").at("(0,1)")).asScalar();
        if (L22.quadA.size() != 1 ||
            L22.quadA.begin()->first != OperatorSpec::Pair{0, 1} ||
            L22.quadA.begin()->second != a01) {
            ok = false;
            witness = "second-order table";
        }
        if (!L22.quadC.empty() || !L22.constTerm.isZero()) {
            ok = false;
            witness = "unexpected extra terms";
        }
        r.add("printed operator table", ok, witness);
        r.add("dispersionless constraint on the topological solution",
              checkGenus0(L22, 5, 5).pass, "residual reported by checker");
        OperatorSpec bad = L22;
        bad.quadC[{0, 0}] = ParamPoly(1);
        r.add("perturbed operator violates the dispersionless constraint",
              !checkGenus0(bad, 5, 5).pass, "perturbation was not detected");
    }

    // genus expansion anchors
    DeformationData def = deform(extractLike(2, 1, SRC), 2);
    {
        json j = loadJson(dataDir + "/genus_expansion.json");
        for (const auto& [gs, row] : j.at("H").items()) {
            unsigned g = (unsigned)std::stoul(gs);
            for (size_t l = 0; l < row.size(); ++l) {
                JetFunction expect = parseV(row[l]);
                JetFunction got = def.coeff(g, (unsigned)l);
                r.add("H_" + gs + " coefficient of s^" + std::to_string(l),
                      got == expect, show(got - expect));
            }
            r.add("H_" + gs + " coupling degree",
                  def.sDegree(g) + 1 == row.size(), "extra coupling orders");
        }
        JetFunction f2 = parseV(j.at("F2"));
        r.add("genus-two free energy", solveFg(2) == f2, show(solveFg(2) - f2));
        r.add("free energy equals the undeformed limit",
              def.H(2).substParam("s", ParamPoly()) == solveFg(2), "mismatch at s=0");
    }
    r.merge(verifyGradings(def));

    // flow anchors
    DeformationData d3 = deform(extractLike(2, 1, SRC), 3);
    HierarchyTable t3 = buildHierarchy(d3.assembled(), 3, 3);
    {
        json j = loadJson(dataDir + "/first_flow.json");
        const HierarchyTable& t = t3;
        for (const auto& [os, val] : j.at("density").items()) {
            unsigned n = (unsigned)std::stoul(os);
            JetFunction expect = parseW(val);
            JetFunction got = t.at(0, 1).coeff(n);
            r.add("first-flow density at eps^" + os, got == expect,
                  show(got - expect, "w"));
        }
        JetFunction lead;
        JetFunction c6 = t.at(0, 1).coeff(6);
        if (c6.isPolynomial())
            for (const auto& [m, c] : c6.num().terms())
                if (m.exps() == JetMonomial::Exps{{6, 1}}) lead = JetFunction(ParamPoly(c));
        JetFunction expectLead = parseW(j.at("order_six_leading"));
        r.add("first-flow leading term at eps^6", lead == expectLead,
              show(lead - expectLead, "w"));

        // properties of the deformed hierarchy
        r.merge(verifyCommutativity(t, {{1, 2}, {1, 3}}, 2));
        r.merge(verifyTauStructure(t, 2));
        r.merge(verifyPolynomiality(t, 2));
        r.merge(verifyGradings(t, 2));

        // the raw change of variable itself is rational
        QuasiMiura qm = quasiMiura(def.assembled(), 2);
        bool rational = false;
        for (const auto& [n, c] : qm.forward.coeffs())
            if (!c.isPolynomial()) rational = true;
        r.add("raw change of variable is rational", rational,
              "expected denominators in the forward map");
    }

    // triviality of the symmetry direction
    {
        DeformationData triv = deform(extractLike(2, 0, SRC), 2);
        r.add("symmetry direction deforms trivially",
              triv.sDegree(1) == 0 && triv.sDegree(2) == 0,
              "coupling dependence detected");
    }

    // combination hierarchy properties
    OperatorSpec combo = combine({{ParamPoly::param("a12"), extractLike(1, 1, SRC)},
                                  {ParamPoly::param("a22"), extractLike(2, 1, SRC)},
                                  {ParamPoly::param("a34"), extractLike(3, 2, SRC)}});
    DeformationData dc = deform(combo, 3);
    std::map<unsigned, JetFunction> Hc;
    for (unsigned g = 1; g <= 3; ++g)
        Hc[g] = dc.H(g).substParam("s", ParamPoly(1));
    {
        HierarchyTable tc2 = buildHierarchy({{1, Hc[1]}, {2, Hc[2]}}, 2, 3);
        r.merge(verifyCommutativity(tc2, {{1, 2}, {1, 3}}, 2));
        r.merge(verifyTauStructure(tc2, 2));
        r.merge(verifyPolynomiality(tc2, 2));
    }

    // normal-form anchors
    {
        json j = loadJson(dataDir + "/normal_form.json");
        NormalForm nf = normalForm(t3, 3);
        r.add("second-order coefficient is 1/12",
              nf.a[0] == JetFunction(Rat(1, 12)), show(nf.a[0], "w"));
        JetFunction a1p = nf.a[1].jetPartial(0);
        r.add("b1 relation", nf.b.at(1) == Rat(5, 6) * a1p,
              show(nf.b.at(1) - Rat(5, 6) * a1p, "w"));
        JetFunction a1ppp = a1p.jetPartial(0).jetPartial(0);
        r.add("b2 relation", nf.b.at(2) == Rat(1, 16) * a1ppp,
              show(nf.b.at(2) - Rat(1, 16) * a1ppp, "w"));
        JetFunction b3exp = Rat(10, 7) * nf.a[1] * nf.a[1] + Rat(1, 14) * a1p;
        r.add("b3 relation", nf.b.at(3) == b3exp, show(nf.b.at(3) - b3exp, "w"));

        // the computed reduction satisfies the same bilinear shape with a
        // rescaled quadratic term; recorded because the reduction below is
        // shown to be rigid, so this value carries no residual freedom
        JetFunction b3alt = Rat(120, 7) * nf.a[1] * nf.a[1] + Rat(1, 14) * a1p;
        r.add("sixth-order coefficient relation, rescaled quadratic (reported)",
              nf.b.at(3) == b3alt, show(nf.b.at(3) - b3alt, "w"));

        // rigidity: no Laurent-coefficient reparametrization fixes the
        // fourth order and moves the sixth within the pattern
        {
            HierarchyTable slim;
            slim.Gmax = t3.Gmax;
            slim.set(0, 0, t3.at(0, 0));
            slim.set(0, 1, t3.at(0, 1));
            HierarchyTable red = applyNormalMiura(slim, nf.densities);
            unsigned dim = residualGaugeDimension(red);
            r.add("reduction rigidity at sixth order (reported)", dim == 0,
                  "residual dimension " + std::to_string(dim));
        }

        // three-operator combination
        HierarchyTable tc = buildHierarchy(Hc, 3, 1);
        NormalForm nfc = normalForm(tc, 3);
        // the printed expressions use u for the dependent variable
        std::map<std::string, JetFunction> uvar{{"u", JetFunction(DiffPoly::var(0))}};
        JetFunction a1exp = parseExpr(j.at("combination").at("a1").get<std::string>(), &uvar, "w");
        JetFunction a2exp = parseExpr(j.at("combination").at("a2").get<std::string>(), &uvar, "w");
        r.add("combination a1", nfc.a[1] == a1exp, show(nfc.a[1] - a1exp, "w"));
        r.add("combination a2", nfc.a[2] == a2exp, show(nfc.a[2] - a2exp, "w"));
        JetFunction b3altc = Rat(120, 7) * nfc.a[1] * nfc.a[1] +
                             Rat(1, 14) * nfc.a[1].jetPartial(0);
        r.add("combination sixth-order relation, rescaled quadratic (reported)",
              nfc.b.at(3) == b3altc, show(nfc.b.at(3) - b3altc, "w"));

        // homogeneity probe of the stronger conjecture: deg a_{i,2j} = i,
        // deg w = -1, a_j homogeneous of degree 2j - 1
        auto homogeneous = [](const JetFunction& a, int target) {
            if (!a.isPolynomial()) return false;
            std::map<std::string, int> wt{{"a12", 1}, {"a22", 2}, {"a34", 3}};
            for (const auto& [m, coeff] : a.num().terms()) {
                int base = -(int)m.exp(0);
                for (const auto& [pm, c] : coeff.terms()) {
                    int d = base;
                    for (const auto& [name, e] : pm) {
                        auto it = wt.find(name);
                        if (it == wt.end()) return false;
                        d += it->second * (int)e;
                    }
                    if (d != target) return false;
                }
            }
            return true;
        };
        r.add("homogeneity probe for a1 (reported)", homogeneous(nfc.a[1], 1),
              "inhomogeneous under the stated weights");
        r.add("homogeneity probe for a2 (reported)", homogeneous(nfc.a[2], 3),
              "inhomogeneous under the stated weights");
    }

    // composition group property
    {
        OperatorSpec L22 = extractLike(2, 1, SRC);
        auto two = compose({{L22, ParamPoly::param("s1")}, {L22, ParamPoly::param("s2")}}, 2);
        ParamPoly sum = ParamPoly::param("s1") + ParamPoly::param("s2");
        bool ok = true;
        for (unsigned g = 1; g <= 2; ++g)
            if (!(def.H(g).substParam("s", sum) == two.at(g))) ok = false;
        r.add("composition acts additively in the coupling", ok,
              "stagewise composition disagrees with the one-parameter family");
    }

    // Sawada-Kotera reduction
    {
        json j = loadJson(dataDir + "/sawada_kotera.json");
        std::map<std::string, JetFunction> u;
        DiffPoly shifted = DiffPoly(1) + DiffPoly::var(0);
        u["u"] = JetFunction(shifted);
        for (unsigned k = 1; k <= 8; ++k)
            u["u" + std::to_string(k)] = JetFunction(DiffPoly::var(k));
        auto parseU = [&](const json& v) {
            return parseExpr(v.get<std::string>(), &u, "w");
        };

        const unsigned cap = 4;
        EpsSeries t1(cap);
        for (const auto& [os, val] : j.at("first_flow_density").items()) {
            JetFunction f = parseU(val);
            // densities are normalized to vanish at the origin
            f -= valueAtZero(f);
            t1.setCoeff((unsigned)std::stoul(os), f);
        }
        HierarchyTable h;
        h.Gmax = 2;
        h.set(0, 0, EpsSeries(JetFunction(DiffPoly::var(0)), cap));
        h.set(0, 1, t1);

        MiuraDensity A0, A1;
        A0.logCoeff = parseU(j.at("miura").at("log_coefficient")).asScalar();
        A0.logArg = parseU(j.at("miura").at("log_argument")).asDiffPoly();
        A1.value = parseU(j.at("miura").at("order_four"));
        HierarchyTable h2 = applyNormalMiura(h, {A0, A1});

        EpsSeries expect(cap);
        for (const auto& [os, val] : j.at("transformed_density").items()) {
            JetFunction f = parseU(val);
            f -= valueAtZero(f);
            expect.setCoeff((unsigned)std::stoul(os), f);
        }
        r.add("transformed first flow matches", h2.at(0, 1).agreesWith(expect),
              firstDifference(h2.at(0, 1), expect));

        HierarchyTable h3 = reparamFlows(h2, {{0, {{0, Rat(1)}}},
                                              {1, {{0, Rat(-1)}, {1, Rat(1)}}}});
        HierarchyTable h4 = rescaleEps(h3, parseU(j.at("eps_rescale")).asScalar().asConstant());
        NormalForm nf = normalForm(h4, 2);
        ParamPoly a12 = Rat(60) * nf.a[1].taylorCoeffAtJet0(0);
        ParamPoly a22 = Rat(-20) * nf.a[1].taylorCoeffAtJet0(1);
        ParamPoly a12exp = parseU(j.at("expected").at("a12")).asScalar();
        ParamPoly a22exp = parseU(j.at("expected").at("a22")).asScalar();
        r.add("matched parameter a12", a12 == a12exp, a12.toString());
        r.add("matched parameter a22", a22 == a22exp, a22.toString());
    }

    return r;
}

} // namespace vlh
