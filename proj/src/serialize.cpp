#include "vlh/serialize.hpp"

#include "vlh/error.hpp"
#include "vlh/expr.hpp"

#include <fstream>

namespace vlh {

namespace {

ParamPoly scalarFrom(const std::string& s) { return parseExpr(s).asScalar(); }

Rat ratFromString(const std::string& s) { return scalarFrom(s).asConstant(); }

DiffPoly diffFrom(const std::string& s, const std::string& jetName) {
    JetFunction f = parseExpr(s, nullptr, jetName);
    return f.asDiffPoly();
}

} // namespace

Json toJson(const JetFunction& f, const std::string& jetName) {
    Json j;
    j["num"] = f.num().toString(jetName);
    Json den = Json::array();
    for (const auto& [factor, power] : f.den())
        den.push_back(Json::array({factor.toString(jetName), power}));
    j["den"] = den;
    j["log"] = f.logCoeff().toString();
    return j;
}

JetFunction jetFromJson(const Json& j, const std::string& jetName) {
    JetFunction::Den den;
    for (const auto& e : j.at("den"))
        den[diffFrom(e.at(0).get<std::string>(), jetName)] += e.at(1).get<unsigned>();
    JetFunction out(diffFrom(j.at("num").get<std::string>(), jetName), den);
    ParamPoly lc = scalarFrom(j.at("log").get<std::string>());
    if (!lc.isZero()) out += JetFunction::logV1(lc);
    return out;
}

Json toJson(const EpsSeries& s, const std::string& jetName) {
    Json j;
    j["cap"] = s.cap();
    Json c = Json::object();
    for (const auto& [n, f] : s.coeffs()) c[std::to_string(n)] = toJson(f, jetName);
    j["coefficients"] = c;
    return j;
}

EpsSeries epsFromJson(const Json& j, const std::string& jetName) {
    EpsSeries s(j.at("cap").get<unsigned>());
    for (const auto& [key, val] : j.at("coefficients").items())
        s.setCoeff((unsigned)std::stoul(key), jetFromJson(val, jetName));
    return s;
}

namespace {

Json pairTable(const std::map<OperatorSpec::Pair, ParamPoly>& m) {
    Json out = Json::array();
    for (const auto& [key, c] : m)
        out.push_back(Json::array({key.first, key.second, c.toString()}));
    return out;
}

void readPairTable(const Json& j, std::map<OperatorSpec::Pair, ParamPoly>& m) {
    for (const auto& e : j)
        m[{e.at(0).get<unsigned>(), e.at(1).get<unsigned>()}] =
            scalarFrom(e.at(2).get<std::string>());
}

} // namespace

Json toJson(const OperatorSpec& op) {
    Json j;
    j["src_max"] = op.srcMax;
    j["quad_a"] = pairTable(op.quadA);
    j["lin_b"] = pairTable(op.linB);
    j["quad_c"] = pairTable(op.quadC);
    j["const"] = op.constTerm.toString();
    return j;
}

OperatorSpec operatorFromJson(const Json& j) {
    OperatorSpec op;
    op.srcMax = j.at("src_max").get<long>();
    readPairTable(j.at("quad_a"), op.quadA);
    readPairTable(j.at("lin_b"), op.linB);
    readPairTable(j.at("quad_c"), op.quadC);
    op.constTerm = scalarFrom(j.at("const").get<std::string>());
    return op;
}

Json toJson(const DeformationData& d) {
    Json j;
    j["operator"] = toJson(d.op);
    j["g_max"] = d.Gmax;
    j["s_cap"] = d.sDegCap;
    j["s_name"] = d.sName;
    Json c = Json::object();
    for (const auto& [g, v] : d.coeffs) {
        Json row = Json::array();
        for (const auto& f : v) row.push_back(toJson(f));
        c[std::to_string(g)] = row;
    }
    j["coefficients"] = c;
    Json t = Json::object();
    for (const auto& [g, flag] : d.truncatedFlags) t[std::to_string(g)] = flag;
    j["truncated"] = t;
    return j;
}

DeformationData deformationFromJson(const Json& j) {
    DeformationData d;
    d.op = operatorFromJson(j.at("operator"));
    d.Gmax = j.at("g_max").get<unsigned>();
    d.sDegCap = j.at("s_cap").get<unsigned>();
    d.sName = j.at("s_name").get<std::string>();
    for (const auto& [key, row] : j.at("coefficients").items()) {
        std::vector<JetFunction> v;
        for (const auto& e : row) v.push_back(jetFromJson(e));
        d.coeffs[(unsigned)std::stoul(key)] = std::move(v);
    }
    for (const auto& [key, flag] : j.at("truncated").items())
        d.truncatedFlags[(unsigned)std::stoul(key)] = flag.get<bool>();
    return d;
}

Json toJson(const HierarchyTable& h) {
    Json j;
    j["g_max"] = h.Gmax;
    Json om = Json::array();
    for (const auto& [key, s] : h.omega)
        om.push_back(Json::array({key.first, key.second, toJson(s, "w")}));
    j["omega"] = om;
    return j;
}

HierarchyTable hierarchyFromJson(const Json& j) {
    HierarchyTable h;
    h.Gmax = j.at("g_max").get<unsigned>();
    for (const auto& e : j.at("omega"))
        h.set(e.at(0).get<unsigned>(), e.at(1).get<unsigned>(),
              epsFromJson(e.at(2), "w"));
    return h;
}

Json toJson(const NormalForm& nf) {
    Json j;
    Json a = Json::array();
    for (const auto& f : nf.a) a.push_back(toJson(f, "w"));
    j["a"] = a;
    Json b = Json::object();
    for (const auto& [k, f] : nf.b) b[std::to_string(k)] = toJson(f, "w");
    j["b"] = b;
    Json dens = Json::array();
    for (const auto& d : nf.densities) {
        Json e;
        e["value"] = toJson(d.value, "w");
        e["log_coefficient"] = d.logCoeff.toString();
        e["log_argument"] = d.logArg.toString("w");
        dens.push_back(e);
    }
    j["densities"] = dens;
    j["kernel_dims"] = nf.kernelDims;
    return j;
}

Json toJson(const Report& r) {
    Json j;
    j["pass"] = r.pass();
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["status"] = c.status == CheckResult::PASS   ? "PASS"
                      : c.status == CheckResult::FAIL ? "FAIL"
                                                      : "SKIP";
        e["witness"] = c.witness;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j;
}

std::string dumpDeterministic(const Json& j) { return j.dump(2) + "\n"; }

Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UnsupportedInputError("cannot open " + path);
    return Json::parse(in);
}

void writeJsonFile(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw UnsupportedInputError("cannot open " + path + " for writing");
    out << dumpDeterministic(j);
}


} // namespace vlh
