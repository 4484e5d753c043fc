#ifndef VLH_TSERIES_HPP
#define VLH_TSERIES_HPP

#include "vlh/rational.hpp"

#include <map>
#include <string>

namespace vlh {

// Polynomial truncation of a power series in the time variables t_0, t_1,
// ..., kept to total degree <= cap.  Used for evaluating genus-0 data on
// the topological solution.
class TSeries {
public:
    using Mono = std::map<unsigned, unsigned>;

    explicit TSeries(unsigned cap = 0) : cap_(cap) {}
    TSeries(const Rat& c, unsigned cap);
    static TSeries var(unsigned m, unsigned cap);

    unsigned cap() const { return cap_; }
    bool isZero() const { return terms_.empty(); }
    Rat coeff(const Mono& m) const;
    const std::map<Mono, Rat>& terms() const { return terms_; }

    TSeries operator-() const;
    TSeries& operator+=(const TSeries& o);
    TSeries& operator-=(const TSeries& o);
    TSeries operator*(const TSeries& o) const;
    TSeries& operator*=(const TSeries& o) { *this = *this * o; return *this; }
    TSeries& operator*=(const Rat& c);
    friend TSeries operator+(TSeries a, const TSeries& b) { a += b; return a; }
    friend TSeries operator-(TSeries a, const TSeries& b) { a -= b; return a; }
    friend TSeries operator*(const Rat& c, TSeries s) { s *= c; return s; }

    TSeries pow(unsigned e) const;
    TSeries truncated(unsigned newCap) const;
    // Derivative with respect to t_m.
    TSeries tPartial(unsigned m) const;
    // Inverse of a series with nonzero constant term.
    TSeries inverse() const;

    // Equality through min(cap, o.cap).
    bool agreesWith(const TSeries& o) const;

    std::string toString() const;

private:
    void add(const Mono& m, const Rat& c);
    void trim();
    std::map<Mono, Rat> terms_;
    unsigned cap_;
};

} // namespace vlh

#endif
