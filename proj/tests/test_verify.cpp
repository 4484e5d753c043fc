#include "doctest.h"

#include "vlh/error.hpp"
#include "vlh/expr.hpp"
#include "vlh/genus.hpp"
#include "vlh/verify.hpp"

using namespace vlh;

TEST_CASE("expression parsing") {
    JetFunction f2 = parseExpr("v2^3/(360*v1^4) - 7*v2*v3/(1920*v1^3) + v4/(1152*v1^2)");
    CHECK(f2 == solveFg(2));
    CHECK(parseExpr("1/24*log(v1)") == JetFunction::logV1(Rat(1, 24)));
    CHECK(parseExpr("-3/2*s*w*w1^2", nullptr, "w") ==
          Rat(-3, 2) * ParamPoly::param("s") *
              JetFunction(DiffPoly::var(0) * DiffPoly::var(1).pow(2)));
    std::map<std::string, JetFunction> b{{"u", JetFunction(DiffPoly(1) + DiffPoly::var(0))}};
    CHECK(parseExpr("u^2 - 1", &b, "w") ==
          JetFunction(DiffPoly::var(0).pow(2) + Rat(2) * DiffPoly::var(0)));
    CHECK_THROWS_AS(parseExpr("v1 +"), UnsupportedInputError);
    CHECK_THROWS_AS(parseExpr("log(v2)"), UnsupportedInputError);
    CHECK_THROWS_AS(parseExpr("v / s"), UnsupportedInputError);
}

TEST_CASE("property checks on the dispersionless hierarchy") {
    HierarchyTable t = buildHierarchy({}, 0, 3, 2);
    CHECK(verifyCommutativity(t, {{1, 2}, {1, 3}}, 0).pass());
    CHECK(verifyTauStructure(t, 0).pass());
    CHECK(verifyPolynomiality(t, 0).pass());
    CHECK(verifyGradings(t, 0).pass());
}

TEST_CASE("property checks detect broken input") {
    HierarchyTable t = buildHierarchy({{1, JetFunction::logV1(Rat(1, 24))}}, 1, 2, 1);
    REQUIRE(verifyCommutativity(t, {{1, 2}}, 1).pass());
    REQUIRE(verifyTauStructure(t, 1).pass());

    HierarchyTable bad = t;
    EpsSeries s = bad.at(0, 1);
    s.setCoeff(2, s.coeff(2) + JetFunction(DiffPoly::var(1).pow(2)));
    bad.set(0, 1, s);
    Report rc = verifyCommutativity(bad, {{1, 2}}, 1);
    CHECK_FALSE(rc.pass());
    for (const auto& c : rc.checks)
        if (c.status == CheckResult::FAIL) CHECK_FALSE(c.witness.empty());
    CHECK_FALSE(verifyTauStructure(bad, 1).pass());

    HierarchyTable rational = t;
    EpsSeries s2 = rational.at(0, 1);
    s2.setCoeff(2, s2.coeff(2) + JetFunction::reciprocal(DiffPoly::var(1)));
    rational.set(0, 1, s2);
    CHECK_FALSE(verifyPolynomiality(rational, 1).pass());
}

TEST_CASE("grading audit of the genus expansion") {
    DeformationData d = deform(extractLike(2, 1, 24), 2);
    CHECK(verifyGradings(d).pass());
}
