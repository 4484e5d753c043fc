#ifndef VLH_SERIALIZE_HPP
#define VLH_SERIALIZE_HPP

#include "vlh/genus.hpp"
#include "vlh/hierarchy.hpp"
#include "vlh/operators.hpp"
#include "vlh/verify.hpp"

#include <json.hpp>

#include <string>

namespace vlh {

// JSON forms use "p/q" strings for rationals and expression strings (the
// toString format, re-readable by parseExpr) for polynomials.  Keys are
// emitted in a fixed order so serialization is byte-deterministic.
using Json = nlohmann::ordered_json;

Json toJson(const JetFunction& f, const std::string& jetName = "v");
JetFunction jetFromJson(const Json& j, const std::string& jetName = "v");

Json toJson(const EpsSeries& s, const std::string& jetName = "v");
EpsSeries epsFromJson(const Json& j, const std::string& jetName = "v");

Json toJson(const OperatorSpec& op);
OperatorSpec operatorFromJson(const Json& j);

Json toJson(const DeformationData& d);
DeformationData deformationFromJson(const Json& j);

Json toJson(const HierarchyTable& h);
HierarchyTable hierarchyFromJson(const Json& j);

Json toJson(const NormalForm& nf);

Json toJson(const Report& r);

std::string dumpDeterministic(const Json& j);
Json loadJsonFile(const std::string& path);
void writeJsonFile(const std::string& path, const Json& j);

} // namespace vlh

#endif
