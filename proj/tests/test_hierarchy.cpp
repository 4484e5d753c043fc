#include "doctest.h"

#include "vlh/error.hpp"
#include "vlh/genus.hpp"
#include "vlh/hierarchy.hpp"

using namespace vlh;

namespace {

constexpr unsigned SRC = 24;

JetFunction pterm(const ParamPoly& c, JetMonomial::Exps e,
                  DiffPoly denf = DiffPoly(), unsigned dpow = 0) {
    DiffPoly n{JetMonomial(std::move(e))};
    JetFunction f = dpow ? JetFunction(n, {{denf, dpow}}) : JetFunction(n);
    f *= c;
    return f;
}

JetFunction term(const Rat& c, JetMonomial::Exps e,
                 DiffPoly denf = DiffPoly(), unsigned dpow = 0) {
    return pterm(ParamPoly(c), std::move(e), std::move(denf), dpow);
}

ParamPoly sp(unsigned k) { return ParamPoly::param("s", k); }

} // namespace

TEST_CASE("undeformed first flow is the standard dispersive equation") {
    std::map<unsigned, JetFunction> H{{1, solveFg(1)}, {2, solveFg(2)}};
    HierarchyTable t = buildHierarchy(H, 2, 1);
    CHECK(t.at(0, 1).coeff(0) == term(Rat(1, 2), {{0, 2}}));
    CHECK(t.at(0, 1).coeff(2) == term(Rat(1, 12), {{2, 1}}));
    CHECK(t.at(0, 1).coeff(4).isZero());
}

TEST_CASE("deformed first flow matches at dispersion orders two and four") {
    DeformationData d = deform(extractLike(2, 1, SRC), 2);
    HierarchyTable t = buildHierarchy(d.assembled(), 2, 1);
    JetFunction e2 = term(Rat(1, 12), {{2, 1}})
                   + pterm(Rat(-3, 2) * sp(1), {{0, 1}, {1, 2}});
    JetFunction e4 = pterm(Rat(-1, 10) * sp(1), {{2, 2}})
                   + pterm(Rat(-3, 10) * sp(1), {{1, 1}, {3, 1}})
                   + pterm(Rat(-1, 20) * sp(1), {{0, 1}, {4, 1}})
                   + pterm(Rat(81, 16) * sp(2), {{1, 4}})
                   + pterm(Rat(171, 10) * sp(2), {{0, 1}, {1, 2}, {2, 1}})
                   + pterm(Rat(18, 5) * sp(2), {{0, 2}, {2, 2}})
                   + pterm(Rat(9, 5) * sp(2), {{0, 2}, {1, 1}, {3, 1}})
                   + pterm(Rat(-243, 10) * sp(3), {{0, 2}, {1, 4}})
                   + pterm(Rat(-108, 5) * sp(3), {{0, 3}, {1, 2}, {2, 1}});
    CHECK(t.at(0, 1).coeff(2) == e2);
    CHECK(t.at(0, 1).coeff(4) == e4);
}

TEST_CASE("deformed first flow at order six has the expected leading term") {
    DeformationData d = deform(extractLike(2, 1, SRC), 3);
    HierarchyTable t = buildHierarchy(d.assembled(), 3, 1);
    JetFunction c6 = t.at(0, 1).coeff(6);
    REQUIRE(c6.isPolynomial());
    ParamPoly lead;
    for (const auto& [m, c] : c6.num().terms())
        if (m.exps() == JetMonomial::Exps{{6, 1}}) lead = c;
    CHECK(lead == Rat(-1, 280) * sp(1));
}

TEST_CASE("standard form of the deformed hierarchy through order four") {
    DeformationData d = deform(extractLike(2, 1, SRC), 2);
    HierarchyTable t = buildHierarchy(d.assembled(), 2, 1);
    NormalForm nf = normalForm(t, 2);
    CHECK(nf.a[0] == JetFunction(Rat(1, 12)));
    CHECK(nf.a[1] == pterm(Rat(-1, 20) * sp(1), {{0, 1}}));
    // b_1 = (5/6) a_1', b_2 = (1/16) a_1'''
    CHECK(nf.b.at(1) == Rat(5, 6) * nf.a[1].jetPartial(0));
    CHECK(nf.b.at(1) == JetFunction(Rat(-1, 24) * sp(1)));
    CHECK(nf.b.at(2) == Rat(1, 16) * nf.a[1].jetPartial(0).jetPartial(0).jetPartial(0));
    CHECK(nf.b.at(2).isZero());
}

TEST_CASE("Sawada-Kotera flows reduce to the standard form") {
    const unsigned cap = 4;
    DiffPoly u = DiffPoly(1) + DiffPoly::var(0); // shifted dependent variable
    auto w = [](unsigned k) { return DiffPoly::var(k); };

    // first flow density, constant part dropped
    EpsSeries t1(cap);
    t1.setCoeff(0, JetFunction(w(0) + Rat(1, 2) * w(0) * w(0)));
    t1.setCoeff(2, term(Rat(1, 2), {{2, 1}}) + term(Rat(-1, 4), {{1, 2}}, u, 1));
    t1.setCoeff(4, term(Rat(-1, 20), {{4, 1}}, u, 1)
                 + term(Rat(1, 5), {{2, 2}}, u, 2)
                 + term(Rat(17, 40), {{1, 4}}, u, 4)
                 + term(Rat(7, 20), {{3, 1}, {1, 1}}, u, 2)
                 + term(Rat(-19, 20), {{1, 2}, {2, 1}}, u, 3));

    HierarchyTable h;
    h.Gmax = 2;
    h.set(0, 0, EpsSeries(JetFunction(w(0)), cap));
    h.set(0, 1, t1);

    // printed change of variable
    MiuraDensity A0;
    A0.logCoeff = ParamPoly(Rat(1, 4));
    A0.logArg = u;
    MiuraDensity A1;
    A1.value = term(Rat(5, 48), {{1, 2}}, u, 3) + term(Rat(-67, 480), {{2, 1}}, u, 2);
    HierarchyTable h2 = applyNormalMiura(h, {A0, A1});

    EpsSeries expect(cap);
    expect.setCoeff(0, JetFunction(w(0) + Rat(1, 2) * w(0) * w(0)));
    expect.setCoeff(2, term(Rat(1, 2), {{2, 1}}));
    expect.setCoeff(4, term(Rat(3, 160), {{1, 4}}, u, 4)
                     + term(Rat(1, 24), {{3, 1}, {1, 1}}, u, 2)
                     + term(Rat(-1, 20), {{4, 1}}, u, 1));
    CHECK(h2.at(0, 1).agreesWith(expect));

    // combine the flows, slow down the dispersion, reduce
    HierarchyTable h3 = reparamFlows(h2, {{0, {{0, Rat(1)}}},
                                          {1, {{0, Rat(-1)}, {1, Rat(1)}}}});
    HierarchyTable h4 = rescaleEps(h3, Rat(1, 6));
    NormalForm nf = normalForm(h4, 2);
    CHECK(nf.a[0] == JetFunction(Rat(1, 12)));
    CHECK(nf.a[1] == term(Rat(-1, 720), {}, u, 1));

    // Taylor match against the two-parameter family
    CHECK(Rat(60) * nf.a[1].taylorCoeffAtJet0(0) == ParamPoly(Rat(-1, 12)));
    CHECK(Rat(-20) * nf.a[1].taylorCoeffAtJet0(1) == ParamPoly(Rat(-1, 36)));
}
