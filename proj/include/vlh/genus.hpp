#ifndef VLH_GENUS_HPP
#define VLH_GENUS_HPP

#include "vlh/operators.hpp"

#include <map>
#include <string>
#include <vector>

namespace vlh {

// The deformed genus expansion {H_g(.; s)} produced by one operator: for
// each genus the coefficients of powers of the coupling s.
struct DeformationData {
    OperatorSpec op;
    unsigned Gmax = 0;
    unsigned sDegCap = 0;
    std::string sName = "s";
    std::map<unsigned, std::vector<JetFunction>> coeffs; // g -> s-coefficients
    std::map<unsigned, bool> truncatedFlags;             // g -> hit the s-cap

    // H_g assembled as a polynomial in the coupling parameter.
    JetFunction H(unsigned g) const;
    std::map<unsigned, JetFunction> assembled() const;
    // Coefficient of s^l (zero beyond the computed range).
    JetFunction coeff(unsigned g, unsigned l) const;
    // Highest s-degree with a nonzero coefficient.
    unsigned sDegree(unsigned g) const;
};

// The genus-g free energy of the undeformed hierarchy, determined by the
// Virasoro constraints on a finite graded ansatz; cached per genus.
// g = 1 returns the closed-form log term.
JetFunction solveFg(unsigned g);

// Run the s-recursion for one operator.  sDegCap = 0 means the default cap
// of 4g per genus.  `initial` overrides the initial data {F_g} (used when
// composing deformations); keys are genera >= 1.
DeformationData deform(const OperatorSpec& op, unsigned Gmax,
                       unsigned sDegCap = 0, const std::string& sName = "s",
                       const std::map<unsigned, JetFunction>* initial = nullptr);

// Successive deformations: run deform for each operator in order,
// evaluating at its coupling value (rational or symbolic) and feeding the
// result to the next stage.  Returns the final {H_g}.
std::map<unsigned, JetFunction>
compose(const std::vector<std::pair<OperatorSpec, ParamPoly>>& sequence,
        unsigned Gmax, unsigned sDegCap = 0);

} // namespace vlh

#endif
