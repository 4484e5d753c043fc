#ifndef VLH_LINSOLVE_HPP
#define VLH_LINSOLVE_HPP

#include "vlh/parampoly.hpp"

#include <vector>

namespace vlh {

struct LinearSolution {
    std::vector<ParamPoly> x;
    unsigned kernelDim = 0;
    // column indices that ended up as free variables (set to zero)
    std::vector<unsigned> freeColumns;
};

// Solve M x = rhs by fraction-free-ish Gaussian elimination over Q; the
// right-hand side may carry parameters.  Free variables are set to zero.
// Throws SolveError when the system is inconsistent.
LinearSolution solveLinear(std::vector<std::vector<Rat>> M,
                           std::vector<ParamPoly> rhs);

// Append the equations "poly == 0" linearised in the named unknowns: terms
// are grouped by their parameter monomial outside the unknowns, giving one
// rational row per group.  Throws InvariantError if poly is not linear in
// the unknowns.
void appendLinearEquations(const ParamPoly& poly,
                           const std::map<std::string, size_t>& unknownIndex,
                           std::vector<std::vector<Rat>>& rows,
                           std::vector<ParamPoly>& rhs);

} // namespace vlh

#endif
