#ifndef VLH_RATIONAL_HPP
#define VLH_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vlh {

// Exact rational scalar.  mpq_class keeps values canonical (gcd-reduced,
// positive denominator) after every operation via canonicalize in the
// constructors we use below.
using Rat = mpq_class;

inline Rat ratFrom(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parse "p", "-p", "p/q".  Throws on malformed input or zero denominator.
inline Rat parseRat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Canonical text form: "p" if integral, else "p/q" with q > 0.
inline std::string ratToString(const Rat& r) {
    return r.get_str();
}

inline Rat ratPow(const Rat& base, unsigned e) {
    Rat out = 1;
    Rat b = base;
    unsigned n = e;
    while (n) {
        if (n & 1u) out *= b;
        b *= b;
        n >>= 1u;
    }
    return out;
}

inline Rat factorialRat(unsigned n) {
    Rat out = 1;
    for (unsigned k = 2; k <= n; ++k) out *= (long)k;
    return out;
}

inline std::uint64_t hashMix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

} // namespace vlh

#endif
