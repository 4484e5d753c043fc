#ifndef VLH_VERIFY_HPP
#define VLH_VERIFY_HPP

#include "vlh/genus.hpp"
#include "vlh/hierarchy.hpp"

#include <string>
#include <vector>

namespace vlh {

struct CheckResult {
    enum Status { PASS, FAIL, SKIP };
    std::string name;
    Status status = PASS;
    std::string witness; // counterexample or residual; required on FAIL
};

struct Report {
    std::vector<CheckResult> checks;

    bool pass() const;
    void add(const std::string& name, bool ok, const std::string& witness = "");
    void skip(const std::string& name, const std::string& why);
    void merge(const Report& o);
    std::string toText() const;
};

// Equality of the mixed t-derivatives of the dependent variable for each
// pair of flows, through eps^{2G}.
Report verifyCommutativity(const HierarchyTable& h,
                           const std::vector<std::pair<unsigned, unsigned>>& pairs,
                           unsigned G);

// (a) each d_{t_{m'}} omega(0,m) is dx-exact, (b) omega(0,0) = w,
// (c) total symmetry of d_{t_p} omega(q,r) over the assembled entries.
Report verifyTauStructure(const HierarchyTable& h, unsigned G);

// Every genus coefficient of every entry has unit denominator.
Report verifyPolynomiality(const HierarchyTable& h, unsigned G);

// omega entries: eps^{2g} coefficient homogeneous of degree 2g.
Report verifyGradings(const HierarchyTable& h, unsigned G);
// genus expansion: deg H_g = 2g-2, secondary degree <= 3g-3.
Report verifyGradings(const DeformationData& d);

// End-to-end pipeline against the transcribed expected values in dataDir.
Report referenceSuite(const std::string& dataDir);

} // namespace vlh

#endif
