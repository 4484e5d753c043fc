#include "doctest.h"

#include "vlh/eps_series.hpp"
#include "vlh/error.hpp"

using namespace vlh;

namespace {
const DiffPoly V = DiffPoly::var(0);
const DiffPoly V1 = DiffPoly::var(1);
const DiffPoly V2 = DiffPoly::var(2);
const DiffPoly V3 = DiffPoly::var(3);
}

TEST_CASE("jet function reduction cancels common factors") {
    // (v1^2 * v2) / v1  ->  v1 * v2
    JetFunction f(V1 * V1 * V2, {{V1, 1}});
    CHECK(f.isPolynomial());
    CHECK(f.asDiffPoly() == V1 * V2);

    // content of denominator factors moves into the numerator
    JetFunction g(DiffPoly(1), {{ratFrom(2) * V1, 1}});
    JetFunction h = ratFrom(1, 2) * JetFunction::reciprocal(V1);
    CHECK(g == h);
}

TEST_CASE("field arithmetic") {
    JetFunction a = JetFunction::reciprocal(V1);          // 1/v1
    JetFunction b(V2, {{V1, 2}});                         // v2/v1^2
    JetFunction s = a * a;                                // 1/v1^2
    CHECK(a * JetFunction(V1) == JetFunction(DiffPoly(1)));
    // v2/v1^2 + 1/v1 = (v2 + v1)/v1^2
    JetFunction sum = b + a;
    CHECK(sum == JetFunction(V2 + V1, {{V1, 2}}));
    CHECK((sum - b - a).isZero());
    CHECK(s * JetFunction(V1 * V1 * V2) == JetFunction(V2));
}

TEST_CASE("dx obeys the quotient rule") {
    // d/dx (v2 / v1) = v3/v1 - v2^2/v1^2
    JetFunction f(V2, {{V1, 1}});
    JetFunction expect = JetFunction(V3, {{V1, 1}}) - JetFunction(V2 * V2, {{V1, 2}});
    CHECK(f.dx() == expect);
    // Leibniz on rational functions
    JetFunction g = JetFunction::reciprocal(V1, 2);
    CHECK((f * g).dx() == f.dx() * g + f * g.dx());
}

TEST_CASE("log term differentiates into the field") {
    // d/dx (1/24) log v1 = v2 / (24 v1)
    JetFunction F1 = JetFunction::logV1(ParamPoly(ratFrom(1, 24)));
    CHECK(F1.dx() == ratFrom(1, 24) * JetFunction(V2, {{V1, 1}}));
    // second derivative: v3/(24 v1) - v2^2/(24 v1^2)
    JetFunction d2 = F1.dxPow(2);
    JetFunction expect = ratFrom(1, 24) * (JetFunction(V3, {{V1, 1}}) - JetFunction(V2 * V2, {{V1, 2}}));
    CHECK(d2 == expect);
    CHECK_THROWS_AS(F1 * F1, UnsupportedInputError);
}

TEST_CASE("taylor coefficients of a function of v alone") {
    // -1/(720 (1+v)): coefficients (-1/720) (-1)^j
    JetFunction f = ratFrom(-1, 720) * JetFunction::reciprocal(DiffPoly(1) + V);
    CHECK(f.taylorCoeffAtJet0(0).asConstant() == ratFrom(-1, 720));
    CHECK(f.taylorCoeffAtJet0(1).asConstant() == ratFrom(1, 720));
    CHECK(f.taylorCoeffAtJet0(2).asConstant() == ratFrom(-1, 720));
    CHECK_THROWS_AS(JetFunction::reciprocal(V).evalAtJet0(0), SingularSubstitutionError);
}

TEST_CASE("eps series arithmetic and truncation") {
    unsigned cap = 6;
    EpsSeries one(JetFunction(1), cap);
    EpsSeries x = EpsSeries::monomial(2, JetFunction(V1), cap);
    EpsSeries s = one + x;
    EpsSeries sq = s * s;
    CHECK(sq.coeff(0) == JetFunction(1));
    CHECK(sq.coeff(2) == ratFrom(2) * JetFunction(V1));
    CHECK(sq.coeff(4) == JetFunction(V1 * V1));
    CHECK(sq.coeff(6).isZero());
    CHECK(sq.truncated(3).cap() == 3);
    CHECK((s - s).isZero());
    CHECK(x.shifted(2).coeff(4) == JetFunction(V1));
    CHECK(x.shifted(6).isZero());
}

TEST_CASE("substitution round-trips through a perturbed variable") {
    unsigned cap = 6;
    // w = v + eps^2 * v2  (a toy quasi-Miura shape)
    EpsSeries base(JetFunction(V), cap);
    base.setCoeff(2, JetFunction(V2));
    JetSubstitution subst(base);

    // w1 image is v1 + eps^2 v3
    CHECK(subst.image(1).coeff(0) == JetFunction(V1));
    CHECK(subst.image(1).coeff(2) == JetFunction(V3));

    // polynomial substitution matches direct expansion for w^2
    EpsSeries w2 = subst.apply(JetFunction(V * V));
    CHECK(w2.coeff(0) == JetFunction(V * V));
    CHECK(w2.coeff(2) == ratFrom(2) * JetFunction(V * V2));
    CHECK(w2.coeff(4) == JetFunction(V2 * V2));

    // 1/w1 times its source is 1 through the cap
    EpsSeries invw1 = subst.apply(JetFunction::reciprocal(V1));
    EpsSeries prod = invw1 * subst.apply(JetFunction(V1));
    CHECK(prod.agreesWith(EpsSeries(JetFunction(1), cap)));

    // log w1 differentiates consistently: d/dx applied before or after
    EpsSeries logw = subst.apply(JetFunction::logV1(ParamPoly(1)));
    EpsSeries dlog = subst.apply(JetFunction::logV1(ParamPoly(1)).dx());
    CHECK(logw.dx().agreesWith(dlog));
}

TEST_CASE("inverse substitution composes to the identity") {
    unsigned cap = 8;
    // forward: w = v + eps^2 v1^2; inverse computed order by order
    EpsSeries fwd(JetFunction(V), cap);
    fwd.setCoeff(2, JetFunction(V1 * V1));
    JetSubstitution F(fwd);

    // Solve fwd(inv(w)) = w order by order, then verify the composition.
    EpsSeries id(JetFunction(V), cap);
    EpsSeries inv = id;
    for (unsigned ord = 2; ord <= cap; ord += 2) {
        EpsSeries resid = JetSubstitution(inv).apply(fwd) - id;
        inv -= resid;
    }
    CHECK(JetSubstitution(inv).apply(fwd).agreesWith(id));
    CHECK(JetSubstitution(fwd).apply(inv).agreesWith(id));
}
