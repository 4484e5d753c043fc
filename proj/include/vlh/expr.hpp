#ifndef VLH_EXPR_HPP
#define VLH_EXPR_HPP

#include "vlh/jetfunction.hpp"

#include <map>
#include <string>

namespace vlh {

// Parse an expression over jet variables, parameters and rationals:
// integers, identifiers, + - * / ^ ( ) and log(...).  An identifier equal
// to jetName followed by an optional index digits is the jet variable
// (jetName alone is the zeroth jet); `bindings` overrides identifiers;
// anything else is a parameter.  Division requires a parameter-free
// polynomial or scalar divisor; log accepts the first jet only.
JetFunction parseExpr(const std::string& text,
                      const std::map<std::string, JetFunction>* bindings = nullptr,
                      const std::string& jetName = "v");

} // namespace vlh

#endif
