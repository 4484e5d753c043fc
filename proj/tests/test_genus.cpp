#include "doctest.h"

#include "vlh/error.hpp"
#include "vlh/genus.hpp"

using namespace vlh;

namespace {

constexpr unsigned SRC = 24;

// c * prod v_k^e / v_1^denPow
JetFunction term(const Rat& c, JetMonomial::Exps numExps, unsigned denPow = 0) {
    DiffPoly n{JetMonomial(std::move(numExps))};
    JetFunction f = denPow ? JetFunction(n, {{DiffPoly::var(1), denPow}})
                           : JetFunction(n);
    f *= c;
    return f;
}

} // namespace

TEST_CASE("genus-two free energy") {
    JetFunction expected = term(Rat(1, 360), {{2, 3}}, 4)
                         + term(Rat(-7, 1920), {{2, 1}, {3, 1}}, 3)
                         + term(Rat(1, 1152), {{4, 1}}, 2);
    CHECK(solveFg(2) == expected);
}

TEST_CASE("deformation along the first nontrivial operator, genus one") {
    DeformationData d = deform(extractLike(2, 1, SRC), 1);
    CHECK(d.coeff(1, 0) == genusOneFreeEnergy());
    CHECK(d.coeff(1, 1) == term(Rat(-3, 4), {{0, 2}}));
    CHECK(d.sDegree(1) == 1);
    CHECK_FALSE(d.truncatedFlags.at(1));
}

TEST_CASE("deformation along the first nontrivial operator, genus two") {
    DeformationData d = deform(extractLike(2, 1, SRC), 2);
    CHECK(d.coeff(2, 0) == solveFg(2));
    JetFunction h21 = term(Rat(-5, 32), {{2, 1}})
                    + term(Rat(11, 160), {{0, 1}, {2, 2}}, 2)
                    + term(Rat(-3, 40), {{0, 1}, {3, 1}}, 1);
    JetFunction h22 = term(Rat(45, 16), {{0, 1}, {1, 2}})
                    + term(Rat(63, 40), {{0, 2}, {2, 1}});
    JetFunction h23 = term(Rat(-27, 10), {{0, 3}, {1, 2}});
    CHECK(d.coeff(2, 1) == h21);
    CHECK(d.coeff(2, 2) == h22);
    CHECK(d.coeff(2, 3) == h23);
    CHECK(d.sDegree(2) == 3);
    CHECK_FALSE(d.truncatedFlags.at(2));
}

TEST_CASE("deforming along a symmetry of the free energies is trivial") {
    // the genuine constraints annihilate every F_g, so the recursion
    // terminates immediately
    for (int i : {0, 1, 2}) {
        DeformationData d = deform(extractLike(i, 0, SRC), 2);
        CHECK(d.sDegree(1) == 0);
        CHECK(d.sDegree(2) == 0);
        CHECK_FALSE(d.truncatedFlags.at(2));
    }
}

TEST_CASE("coupling cap marks truncation") {
    DeformationData d = deform(extractLike(2, 1, SRC), 2, 2);
    CHECK(d.truncatedFlags.at(2));
    CHECK(d.coeff(2, 2) == term(Rat(45, 16), {{0, 1}, {1, 2}})
                         + term(Rat(63, 40), {{0, 2}, {2, 1}}));
}

TEST_CASE("successive deformations compose additively in the coupling") {
    OperatorSpec L22 = extractLike(2, 1, SRC);
    auto two = compose({{L22, ParamPoly::param("s1")}, {L22, ParamPoly::param("s2")}}, 2);
    DeformationData one = deform(L22, 2);
    ParamPoly sum = ParamPoly::param("s1") + ParamPoly::param("s2");
    for (unsigned g = 1; g <= 2; ++g)
        CHECK(one.H(g).substParam("s", sum) == two.at(g));
}
