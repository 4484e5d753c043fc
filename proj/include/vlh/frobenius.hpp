#ifndef VLH_FROBENIUS_HPP
#define VLH_FROBENIUS_HPP

#include "vlh/jetfunction.hpp"
#include "vlh/tseries.hpp"

namespace vlh {

// Genus-0 structure of the one-dimensional Frobenius manifold with flat
// coordinate v and potential v^3/6 (unit metric, Euler field v d/dv).

// Hamiltonian density theta_m = v^{m+1}/(m+1)!.
DiffPoly theta(unsigned m);

// Two-point function Omega^0_{p;q} = v^{p+q+1} / (p! q! (p+q+1)).
DiffPoly omega0(unsigned p, unsigned q);

// Dispersionless flow d v/dt_m = dx(theta_m) = v^m v_1 / m!.
DiffPoly flow0(unsigned m);

// Genus-one free energy (1/24) log v_1.
JetFunction genusOneFreeEnergy();

// Power-series solution v(t) of the genus-0 hierarchy selected by the
// string equation: the unique root of
//     t_0 + (t_1 - 1) v + sum_{m>=2} t_m v^m / m! = 0
// as a series in t_0..t_M of total degree <= cap.
TSeries topologicalSolution(unsigned maxTime, unsigned cap);

} // namespace vlh

#endif
