#include "vlh/frobenius.hpp"

namespace vlh {

DiffPoly theta(unsigned m) {
    return (Rat(1) / factorialRat(m + 1)) * DiffPoly::var(0, m + 1);
}

DiffPoly omega0(unsigned p, unsigned q) {
    Rat c = Rat(1) / (factorialRat(p) * factorialRat(q) * Rat((long)(p + q + 1)));
    return c * DiffPoly::var(0, p + q + 1);
}

DiffPoly flow0(unsigned m) {
    return (Rat(1) / factorialRat(m)) * DiffPoly::var(0, m) * DiffPoly::var(1);
}

JetFunction genusOneFreeEnergy() {
    return JetFunction::logV1(ParamPoly(ratFrom(1, 24)));
}

TSeries topologicalSolution(unsigned maxTime, unsigned cap) {
    // Newton iteration on f(v) = t_0 + (t_1 - 1) v + sum_{m>=2} t_m v^m/m!,
    // starting from v = 0; each step doubles the trusted t-degree.
    auto f = [&](const TSeries& v) {
        TSeries out = TSeries::var(0, cap);
        out += (TSeries::var(1, cap) - TSeries(Rat(1), cap)) * v;
        for (unsigned m = 2; m <= maxTime; ++m)
            out += (Rat(1) / factorialRat(m)) * TSeries::var(m, cap) * v.pow(m);
        return out;
    };
    auto fprime = [&](const TSeries& v) {
        TSeries out = TSeries::var(1, cap) - TSeries(Rat(1), cap);
        for (unsigned m = 2; m <= maxTime; ++m)
            out += (Rat(1) / factorialRat(m - 1)) * TSeries::var(m, cap) * v.pow(m - 1);
        return out;
    };
    TSeries v(cap);
    for (unsigned good = 1; ; good *= 2) {
        v -= f(v) * fprime(v).inverse();
        if (good >= cap) break;
    }
    return v;
}

} // namespace vlh
