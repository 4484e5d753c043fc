#ifndef VLH_HIERARCHY_HPP
#define VLH_HIERARCHY_HPP

#include "vlh/eps_series.hpp"
#include "vlh/genus.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vlh {

// Change of dependent variable w = v + O(eps^2) together with its inverse,
// both as substitution bases.
struct QuasiMiura {
    EpsSeries forward; // w in terms of v-jets
    EpsSeries inverse; // v in terms of w-jets
};

// Two-point functions of a deformed hierarchy, as eps-series in the jets of
// the deformed variable.  Entries stored for p <= q; access is symmetric.
struct HierarchyTable {
    unsigned Gmax = 0;
    std::map<std::pair<unsigned, unsigned>, EpsSeries> omega;

    const EpsSeries& at(unsigned p, unsigned q) const;
    bool has(unsigned p, unsigned q) const;
    void set(unsigned p, unsigned q, EpsSeries s);
    // Density of the m-th flow: omega(0, m).
    const EpsSeries& flowDensity(unsigned m) const { return at(0, m); }
    unsigned epsCap() const { return 2 * Gmax; }
};

// Density of a normal Miura transformation: a graded element of degree 2k,
// allowed to carry a c*log(arg(w_0)) part (degree 0, k = 0 only).
struct MiuraDensity {
    JetFunction value;
    ParamPoly logCoeff;          // coefficient of log(logArg)
    DiffPoly logArg = DiffPoly(1); // polynomial in w_0 alone

    bool hasLog() const { return !logCoeff.isZero(); }
    JetFunction jetPartial(unsigned k) const;
    JetFunction dxValue() const; // d/dx of the density (always in the field)
};

// Inverse of a perturbation of the identity base = w + O(eps^2), by
// order-by-order reversion.
EpsSeries invertBase(const EpsSeries& base);

QuasiMiura quasiMiura(const std::map<unsigned, JetFunction>& H, unsigned Gmax);

// Assemble the deformed two-point functions for p <= q <= Pmax and flows
// m <= Mmax from the genus expansion {H_g}.
HierarchyTable buildHierarchy(const std::map<unsigned, JetFunction>& H,
                              unsigned Gmax, unsigned Mmax, unsigned Pmax = 1);

// w~ = w + eps^2 dx^2(sum_k eps^{2k} A_k); omega entries get
// eps^2 d_{t_p} d_{t_q} of the same sum (derivatives along the deformed
// flows) and are then re-expressed in the new variable.
HierarchyTable applyNormalMiura(const HierarchyTable& h,
                                const std::vector<MiuraDensity>& A);

// eps^2 -> factor * eps^2 (genus-g coefficients scale by factor^g).
HierarchyTable rescaleEps(const HierarchyTable& h, const Rat& factor);

// Linear recombination of the times: new flow p is sum_r M[p][r] old flow r;
// omega transforms bilinearly.
HierarchyTable reparamFlows(const HierarchyTable& h,
                            const std::map<unsigned, std::map<unsigned, Rat>>& M);

struct NormalForm {
    // a[0] is the constant a_0; a[i] (i >= 1) the coefficient function of
    // eps^{2i+2} w_1^{i-1} w_{i+3}, as a function of w_0.
    std::vector<JetFunction> a;
    // b_i keyed 1..17 following the standard-form monomial list.
    std::map<unsigned, JetFunction> b;
    std::vector<MiuraDensity> densities; // the gauge used
    std::vector<unsigned> kernelDims;    // residual gauge per eps order
};

// Reduce omega(0,1) to the standard monomial pattern by normal Miura
// transformations, then read off the coefficient functions.  Supports
// Gmax <= 4 (the pattern beyond eps^8 is not specified).
NormalForm normalForm(const HierarchyTable& h, unsigned Gmax);

} // namespace vlh

#endif
