#include "doctest.h"

#include "vlh/genus.hpp"
#include "vlh/hierarchy.hpp"
#include "vlh/serialize.hpp"

using namespace vlh;

TEST_CASE("json round trips") {
    OperatorSpec combo = combine({{ParamPoly::param("a12"), extractLike(1, 1, 8)},
                                  {ParamPoly::param("a22"), extractLike(2, 1, 8)}});
    OperatorSpec back = operatorFromJson(toJson(combo));
    CHECK(specEquals(back, combo));
    CHECK(back.constTerm == combo.constTerm);

    DeformationData d = deform(extractLike(2, 1, 12), 1);
    DeformationData d2 = deformationFromJson(toJson(d));
    CHECK(d2.Gmax == d.Gmax);
    CHECK(d2.coeffs == d.coeffs);
    CHECK(d2.H(1) == d.H(1));

    HierarchyTable t = buildHierarchy(d.assembled(), 1, 2);
    HierarchyTable t2 = hierarchyFromJson(toJson(t));
    REQUIRE(t2.omega.size() == t.omega.size());
    for (const auto& [key, s] : t.omega) {
        CHECK(t2.at(key.first, key.second).cap() == s.cap());
        CHECK(t2.at(key.first, key.second).agreesWith(s));
    }
}

TEST_CASE("serialization is deterministic") {
    DeformationData d = deform(extractLike(2, 1, 12), 1);
    CHECK(dumpDeterministic(toJson(d)) == dumpDeterministic(toJson(d)));
    CHECK(dumpDeterministic(Json::parse(dumpDeterministic(toJson(d)))) ==
          dumpDeterministic(toJson(d)));
}
