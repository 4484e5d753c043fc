#ifndef VLH_OPERATORS_HPP
#define VLH_OPERATORS_HPP

#include "vlh/frobenius.hpp"
#include "vlh/jetfunction.hpp"
#include "vlh/tseries.hpp"

#include <map>
#include <utility>
#include <vector>

namespace vlh {

// Second-order operator in the time variables,
//   L = sum a_{m,m'} eps^2 d2/dt_m dt_{m'}  +  sum b^{tgt}_{src} ttilde_src d/dt_tgt
//     + eps^{-2} sum c_{m,m'} ttilde_m ttilde_{m'} + const,
// with ttilde_m = t_m - delta_{m,1}.  quadA/quadC hold the total coefficient
// of each unordered pair (m <= m'); linB is materialized for src <= srcMax.
struct OperatorSpec {
    using Pair = std::pair<unsigned, unsigned>;
    std::map<Pair, ParamPoly> quadA;
    std::map<Pair, ParamPoly> linB; // key (target, source)
    std::map<Pair, ParamPoly> quadC;
    ParamPoly constTerm;
    long srcMax = -1;

    bool isZero() const;
    // Largest target - source over linB entries (0 if none).
    long maxShift() const;
    // Coefficient of ttilde_src d/dt_tgt; error when src > srcMax.
    ParamPoly bCoeff(unsigned tgt, unsigned src) const;
    // Symmetrized tensor value: half the stored total off the diagonal.
    ParamPoly aSym(unsigned m, unsigned mp) const;
    ParamPoly cSym(unsigned m, unsigned mp) const;
    OperatorSpec substParam(const std::string& name, const ParamPoly& value) const;
};

// Polynomial in nu^2 with OperatorSpec coefficients: entry j is the
// coefficient of nu^{2j}.
struct NuOperator {
    int level = 0;
    std::vector<OperatorSpec> byNuPower;
};

// Build L_i(nu) from the regularized stress tensor of the one-dimensional
// manifold, materializing flow-shift coefficients for sources <= srcMax.
NuOperator buildL(int i, unsigned srcMax);

// nu^{2j} coefficient of buildL(i); j must satisfy 0 <= j <= floor((i+1)/2).
OperatorSpec extractLike(int i, unsigned j, unsigned srcMax);

OperatorSpec combine(const std::vector<std::pair<ParamPoly, OperatorSpec>>& terms);

// [A, B] on the coefficient tables.  The result's linB is valid for
// sources <= result.srcMax, which shrinks by the largest index shift.
OperatorSpec commutator(const OperatorSpec& A, const OperatorSpec& B);

// Table equality; linB compared on the common materialized range.
bool specEquals(const OperatorSpec& A, const OperatorSpec& B);

struct Genus0Check {
    bool pass = false;
    TSeries residual{0};
};

// Evaluate the genus-0 constraint of the operator on the topological
// solution as a t-series of total degree <= degree, using times t_0..t_maxTime.
Genus0Check checkGenus0(const OperatorSpec& op, unsigned maxTime, unsigned degree);

// The derivation D on the jet space induced by an operator satisfying the
// genus-0 constraint: images D(v_k) for 0 <= k <= K.
struct DGenerator {
    std::vector<DiffPoly> images; // images[k] = D(v_k)
    JetFunction apply(const JetFunction& f) const;
};

DGenerator makeD(const OperatorSpec& op, unsigned K);

} // namespace vlh

#endif
