#include "vlh/expr.hpp"
#include "vlh/error.hpp"

#include <cctype>

namespace vlh {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::map<std::string, JetFunction>* bindings;
    const std::string& jetName;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw UnsupportedInputError("parse error at position " + std::to_string(pos) +
                                    " in \"" + s + "\": " + what);
    }

    JetFunction expression() {
        bool neg = false;
        skip();
        if (eat('-')) neg = true;
        else eat('+');
        JetFunction acc = termExpr();
        if (neg) acc = -acc;
        for (;;) {
            skip();
            if (eat('+')) acc += termExpr();
            else if (eat('-')) acc -= termExpr();
            else return acc;
        }
    }

    JetFunction termExpr() {
        JetFunction acc = powerExpr();
        for (;;) {
            skip();
            if (eat('*')) {
                acc *= powerExpr();
            } else if (eat('/')) {
                JetFunction d = powerExpr();
                if (d.isScalar()) {
                    ParamPoly c = d.asScalar();
                    if (!c.isConstant()) fail("division by a parameter");
                    acc *= Rat(1) / c.asConstant();
                } else if (d.isPolynomial()) {
                    acc *= JetFunction::reciprocal(d.asDiffPoly());
                } else {
                    fail("unsupported divisor");
                }
            } else {
                return acc;
            }
        }
    }

    JetFunction powerExpr() {
        JetFunction b = primary();
        skip();
        if (eat('^')) {
            skip();
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start) fail("expected integer exponent");
            unsigned e = (unsigned)std::stoul(s.substr(start, pos - start));
            JetFunction out(1);
            for (unsigned k = 0; k < e; ++k) out *= b;
            return out;
        }
        return b;
    }

    JetFunction primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            JetFunction inner = expression();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') { ++pos; return -primary(); }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            return JetFunction(Rat(s.substr(start, pos - start)));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "log") {
                if (!eat('(')) fail("expected '(' after log");
                JetFunction inner = expression();
                if (!eat(')')) fail("expected ')'");
                if (!(inner == JetFunction(DiffPoly::var(1))))
                    fail("log accepts the first jet variable only");
                return JetFunction::logV1(ParamPoly(1));
            }
            if (bindings) {
                auto it = bindings->find(name);
                if (it != bindings->end()) return it->second;
            }
            if (name.rfind(jetName, 0) == 0) {
                std::string tail = name.substr(jetName.size());
                bool digits = !tail.empty();
                for (char t : tail)
                    if (!std::isdigit((unsigned char)t)) digits = false;
                if (tail.empty()) return JetFunction(DiffPoly::var(0));
                if (digits)
                    return JetFunction(DiffPoly::var((unsigned)std::stoul(tail)));
            }
            return JetFunction(ParamPoly::param(name));
        }
        fail("unexpected character");
    }
};

} // namespace

JetFunction parseExpr(const std::string& text,
                      const std::map<std::string, JetFunction>* bindings,
                      const std::string& jetName) {
    Parser p{text, 0, bindings, jetName};
    JetFunction out = p.expression();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return out;
}

} // namespace vlh
