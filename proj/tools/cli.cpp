// Command-line front end: operator construction, genus expansion, hierarchy
// assembly, normal forms, and the reference verification suite, with a
// content-addressed result cache.

#include "vlh/error.hpp"
#include "vlh/expr.hpp"
#include "vlh/genus.hpp"
#include "vlh/hierarchy.hpp"
#include "vlh/operators.hpp"
#include "vlh/serialize.hpp"
#include "vlh/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace vlh;

namespace {

constexpr const char* kEngineVersion = "0.1.0";

struct SessionConfig {
    unsigned gMax = 3;
    unsigned mMax = 3;
    unsigned sDegCap = 0; // 0 = per-genus default
    unsigned jetCutoff = 64;
    std::string cacheDir;
    std::string format = "json"; // json | text

    void validate() const {
        if (format != "json" && format != "text")
            throw UnsupportedInputError("output format must be json or text");
        if (jetCutoff == 0 || gMax == 0)
            throw UnsupportedInputError("cutoffs must be positive");
        if (jetCutoff + 2 < 3 * gMax)
            throw UnsupportedInputError("jet cutoff must be at least 3*g_max - 2");
    }

    Json toJson() const {
        Json j;
        j["g_max"] = gMax;
        j["m_max"] = mMax;
        j["s_cap"] = sDegCap;
        j["jet_cutoff"] = jetCutoff;
        j["format"] = format;
        return j; // cache dir intentionally excluded: it never affects results
    }

    void load(const Json& j) {
        if (j.contains("g_max")) gMax = j.at("g_max").get<unsigned>();
        if (j.contains("m_max")) mMax = j.at("m_max").get<unsigned>();
        if (j.contains("s_cap")) sDegCap = j.at("s_cap").get<unsigned>();
        if (j.contains("jet_cutoff")) jetCutoff = j.at("jet_cutoff").get<unsigned>();
        if (j.contains("cache_dir")) cacheDir = j.at("cache_dir").get<std::string>();
        if (j.contains("format")) format = j.at("format").get<std::string>();
    }
};

std::string fnv1a(const std::string& data) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

struct Cache {
    fs::path dir;
    bool enabled = false;

    std::string key(const std::string& command, const std::string& inputs,
                    const SessionConfig& cfg) const {
        return fnv1a(std::string(kEngineVersion) + "\n" + command + "\n" +
                     dumpDeterministic(cfg.toJson()) + "\n" + inputs);
    }

    std::optional<std::string> lookup(const std::string& k) const {
        if (!enabled) return std::nullopt;
        std::ifstream in(dir / (k + ".json"), std::ios::binary);
        if (!in) return std::nullopt;
        return std::string(std::istreambuf_iterator<char>(in), {});
    }

    void store(const std::string& k, const std::string& bytes) const {
        if (!enabled) return;
        fs::create_directories(dir);
        fs::path tmp = dir / (k + ".tmp." + std::to_string(::getpid()));
        {
            std::ofstream out(tmp, std::ios::binary);
            out << bytes;
        }
        fs::rename(tmp, dir / (k + ".json"));
    }
};

void emit(const std::string& bytes, const std::string& outFile) {
    if (outFile.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(outFile, std::ios::binary);
    if (!out) throw UnsupportedInputError("cannot open " + outFile + " for writing");
    out << bytes;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnsupportedInputError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// Compute-or-reuse wrapper: `produce` yields the output bytes.
template <class F>
void cached(const Cache& cache, const std::string& command,
            const std::string& inputs, const SessionConfig& cfg,
            const std::string& outFile, F&& produce) {
    std::string k = cache.key(command, inputs, cfg);
    if (auto hit = cache.lookup(k)) {
        emit(*hit, outFile);
        return;
    }
    std::string bytes = produce();
    cache.store(k, bytes);
    emit(bytes, outFile);
}

OperatorSpec combineFromFile(const std::string& path, unsigned srcMax) {
    Json j = Json::parse(slurp(path));
    if (j.contains("src_max")) srcMax = j.at("src_max").get<unsigned>();
    std::vector<std::pair<ParamPoly, OperatorSpec>> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({parseExpr(t.at("coefficient").get<std::string>()).asScalar(),
                         extractLike(t.at("i").get<int>(), t.at("j").get<unsigned>(),
                                     srcMax)});
    return combine(terms);
}

std::string deformationText(const DeformationData& d) {
    std::string out;
    for (const auto& [g, v] : d.coeffs) {
        out += "H_" + std::to_string(g) + " = " + d.H(g).toString() + "\n";
        (void)v;
    }
    return out;
}

std::string hierarchyText(const HierarchyTable& h) {
    std::string out;
    for (const auto& [key, s] : h.omega)
        out += "omega(" + std::to_string(key.first) + "," +
               std::to_string(key.second) + ") = " + s.toString("w") + "\n";
    return out;
}

std::string normalFormText(const NormalForm& nf) {
    std::string out;
    for (size_t i = 0; i < nf.a.size(); ++i)
        out += "a_" + std::to_string(i) + " = " + nf.a[i].toString("w") + "\n";
    for (const auto& [k, f] : nf.b)
        out += "b_" + std::to_string(k) + " = " + f.toString("w") + "\n";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrable-deformation toolkit for the one-component hierarchy"};
    app.require_subcommand(1);

    SessionConfig cfg;
    std::string configFile, outFile;
    bool noCache = false;
    app.add_option("--config", configFile, "session config JSON");
    app.add_option("--out", outFile, "output file (default stdout)");
    app.add_flag("--no-cache", noCache, "force recomputation");
    std::string cacheDirFlag, formatFlag;
    app.add_option("--cache-dir", cacheDirFlag, "result cache directory");
    app.add_option("--format", formatFlag, "output format: json or text");

    auto* cmdOp = app.add_subcommand("operator", "build an operator table");
    int opI = 2;
    unsigned opJ = 0, opSrcMax = 24;
    std::string combineFile;
    cmdOp->add_option("--i", opI, "level of the operator family");
    cmdOp->add_option("--j", opJ, "coefficient of nu^(2j)");
    cmdOp->add_option("--src-max", opSrcMax, "materialize flow shifts up to this source");
    cmdOp->add_option("--combine", combineFile, "linear combination spec JSON");

    auto* cmdDeform = app.add_subcommand("deform", "run the genus expansion");
    std::string operatorFile;
    unsigned genus = 0;
    int sCapFlag = -1;
    cmdDeform->add_option("--operator", operatorFile, "operator JSON")->required();
    cmdDeform->add_option("--genus", genus, "maximal genus");
    cmdDeform->add_option("--s-cap", sCapFlag,
                          "cap on the coupling degree; 0 keeps only the undeformed part");

    auto* cmdHier = app.add_subcommand("hierarchy", "assemble the deformed flows");
    std::string deformationFile;
    unsigned flows = 0, epsOrder = 0;
    cmdHier->add_option("--deformation", deformationFile, "genus-expansion JSON")->required();
    cmdHier->add_option("--flows", flows, "highest flow index");
    cmdHier->add_option("--eps", epsOrder, "dispersion order (even)");

    auto* cmdNf = app.add_subcommand("normal-form", "reduce to the standard pattern");
    std::string hierFile;
    cmdNf->add_option("--hierarchy", hierFile, "hierarchy table JSON")->required();

    auto* cmdVerify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "reference", dataDir;
    cmdVerify->add_option("--suite", suite, "suite name: reference (alias: paper)");
    cmdVerify->add_option("--data", dataDir, "reference data directory");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        if (!configFile.empty()) cfg.load(Json::parse(slurp(configFile)));
        // flags win over the config file
        if (!formatFlag.empty()) cfg.format = formatFlag;
        if (!cacheDirFlag.empty()) cfg.cacheDir = cacheDirFlag;
        cfg.validate();
        jetCap() = cfg.jetCutoff;

        Cache cache;
        cache.enabled = !noCache;
        if (const char* env = std::getenv("VLH_CACHE_DIR"))
            cache.dir = env;
        else if (!cfg.cacheDir.empty())
            cache.dir = cfg.cacheDir;
        else
            cache.dir = fs::path(".vlh-cache");

        if (*cmdOp) {
            OperatorSpec op = combineFile.empty()
                                  ? extractLike(opI, opJ, opSrcMax)
                                  : combineFromFile(combineFile, opSrcMax);
            emit(dumpDeterministic(toJson(op)), outFile);
        } else if (*cmdDeform) {
            std::string in = slurp(operatorFile);
            unsigned G = genus ? genus : cfg.gMax;
            unsigned sCap = sCapFlag >= 0 ? (unsigned)sCapFlag : cfg.sDegCap;
            std::string tag = "deform/g" + std::to_string(G) + "/s" + std::to_string(sCapFlag);
            cached(cache, tag, in, cfg, outFile, [&] {
                OperatorSpec op = operatorFromJson(Json::parse(in));
                DeformationData d;
                if (sCapFlag == 0) {
                    // undeformed part only: the coupling never enters
                    d.op = op;
                    d.Gmax = G;
                    for (unsigned g = 1; g <= G; ++g) d.coeffs[g] = {solveFg(g)};
                } else {
                    d = deform(op, G, sCap);
                }
                return cfg.format == "text" ? deformationText(d)
                                            : dumpDeterministic(toJson(d));
            });
        } else if (*cmdHier) {
            std::string in = slurp(deformationFile);
            unsigned M = flows ? flows : cfg.mMax;
            unsigned G = epsOrder ? epsOrder / 2 : cfg.gMax;
            std::string tag = "hierarchy/m" + std::to_string(M) + "/g" + std::to_string(G);
            cached(cache, tag, in, cfg, outFile, [&] {
                DeformationData d = deformationFromJson(Json::parse(in));
                HierarchyTable t = buildHierarchy(d.assembled(), std::min(G, d.Gmax), M);
                return cfg.format == "text" ? hierarchyText(t)
                                            : dumpDeterministic(toJson(t));
            });
        } else if (*cmdNf) {
            std::string in = slurp(hierFile);
            cached(cache, "normal-form", in, cfg, outFile, [&] {
                HierarchyTable t = hierarchyFromJson(Json::parse(in));
                NormalForm nf = normalForm(t, t.Gmax);
                return cfg.format == "text" ? normalFormText(nf)
                                            : dumpDeterministic(toJson(nf));
            });
        } else if (*cmdVerify) {
            if (suite != "reference" && suite != "paper")
                throw UnsupportedInputError("unknown suite: " + suite);
            if (dataDir.empty()) dataDir = VLH_REFERENCE_DIR;
            Report r = referenceSuite(dataDir);
            emit(cfg.format == "text" ? r.toText() : dumpDeterministic(toJson(r)),
                 outFile);
            return r.pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
