// Acceptance gate: runs the reference verification suite plus the operator
// algebra checks and reports one PASS/FAIL line per acceptance criterion.

#include "vlh/operators.hpp"
#include "vlh/verify.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace vlh;

namespace {

struct Criterion {
    std::string title;
    std::vector<std::string> patterns; // substrings of reference-suite check names
    bool matchedAll = true;
    bool sawCheck = false;
    std::string firstFailure;

    void absorb(const CheckResult& c) {
        sawCheck = true;
        if (c.status == CheckResult::FAIL) {
            matchedAll = false;
            if (firstFailure.empty()) firstFailure = c.name;
        }
    }
};

bool virasoroAlgebra(std::string& witness) {
    constexpr unsigned SRC = 24;
    auto vir = [](int i) { return extractLike(i, 0, SRC); };
    for (int i = -1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            OperatorSpec lhs = commutator(vir(i), vir(j));
            OperatorSpec rhs = combine({{ParamPoly(Rat(i - j)), vir(i + j)}});
            if (!specEquals(lhs, rhs)) {
                witness = "[L_" + std::to_string(i) + ", L_" + std::to_string(j) +
                          "] != " + std::to_string(i - j) + " L_" + std::to_string(i + j);
                return false;
            }
        }
    OperatorSpec L0 = vir(0), L1 = vir(1), L22 = extractLike(2, 1, SRC);
    OperatorSpec jac = combine({{ParamPoly(1), commutator(commutator(L0, L1), L22)},
                                {ParamPoly(1), commutator(commutator(L1, L22), L0)},
                                {ParamPoly(1), commutator(commutator(L22, L0), L1)}});
    if (!specEquals(jac, OperatorSpec{.srcMax = jac.srcMax})) {
        witness = "Jacobi identity fails on {L_0, L_1, second-order L_2}";
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    std::string dataDir = argc > 1 ? argv[1] : VLH_REFERENCE_DIR;

    std::vector<Criterion> cs = {
        {"operator coefficient table and genus-zero constraint",
         {"printed operator table", "dispersionless constraint", "perturbed operator"}},
        {"Virasoro commutation relations and Jacobi identity", {}},
        {"genus-expansion densities match the reference data",
         {"H_1 ", "H_2 "}},
        {"genus-two free energy and undeformed limit",
         {"genus-two free energy", "free energy equals the undeformed limit",
          "grading of the genus-"}},
        {"deformed first flow through sixth order",
         {"first-flow density", "first-flow leading term"}},
        {"symmetry directions deform trivially",
         {"symmetry direction deforms trivially"}},
        {"hierarchy properties: commutativity, tau structure, polynomiality",
         {"commutativity(", "exactness of", "symmetry of d_t", "polynomiality of",
          "grading of omega", "zeroth flow density", "raw change of variable"}},
        {"standard-form coefficients and their closed-form relations",
         {"second-order coefficient", "b1 relation", "b2 relation", "b3 relation",
          "combination a", "homogeneity probe"}},
        {"reduction of the transformed hierarchy to matched parameters",
         {"transformed first flow", "matched parameter"}},
        {"deformations compose additively in the coupling",
         {"composition acts"}},
    };

    Report rep = referenceSuite(dataDir);

    bool mapped_ok = true;
    std::string unmapped;
    for (const auto& c : rep.checks) {
        bool hit = false;
        for (auto& cr : cs)
            for (const auto& p : cr.patterns)
                if (c.name.find(p) != std::string::npos) {
                    cr.absorb(c);
                    hit = true;
                }
        if (!hit && c.status == CheckResult::FAIL) {
            mapped_ok = false;
            if (unmapped.empty()) unmapped = c.name;
        }
    }

    std::string w2;
    bool vir = virasoroAlgebra(w2);
    cs[1].sawCheck = true;
    cs[1].matchedAll = vir;
    cs[1].firstFailure = w2;

    bool all = true;
    for (size_t k = 0; k < cs.size(); ++k) {
        bool ok = cs[k].matchedAll && cs[k].sawCheck;
        all = all && ok;
        std::printf("%s  criterion %zu: %s%s%s\n", ok ? "PASS" : "FAIL", k + 1,
                    cs[k].title.c_str(),
                    ok || cs[k].firstFailure.empty() ? "" : "  [",
                    ok || cs[k].firstFailure.empty() ? ""
                                                     : (cs[k].firstFailure + "]").c_str());
    }
    if (!mapped_ok) {
        std::printf("FAIL  stray check outside the criteria: %s\n", unmapped.c_str());
        all = false;
    }
    return all ? 0 : 1;
}
