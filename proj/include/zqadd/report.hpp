#pragma once

#include <json.hpp>

#include "zqadd/ap_structure.hpp"
#include "zqadd/chains.hpp"
#include "zqadd/digital_carry.hpp"
#include "zqadd/impact.hpp"
#include "zqadd/residue_set.hpp"
#include "zqadd/zq_core.hpp"

// JSON views of the value types, used by the CLI, the verification harness
// and the Python bindings.
namespace zqadd {

using json = nlohmann::json;

void to_json(json& j, const ResidueSet& s);  // {"q": .., "elements": [..]}
void to_json(json& j, const Subgroup& h);
void to_json(json& j, const KneserReport& r);
void to_json(json& j, const NormalizedDifference& r);
void to_json(json& j, const SubgroupLemmaReport& r);

void to_json(json& j, const ApDecomposition& d);
void to_json(json& j, const UniquenessVerdict& v);
void to_json(json& j, const StabilityReport& r);

void to_json(json& j, const ImpactResult& r);
void to_json(json& j, const SidonReport& r);
void to_json(json& j, const RuzsaReport& r);
void to_json(json& j, const PluenneckeReport& r);
void to_json(json& j, const RangeBounds& r);
void to_json(json& j, const RangeThresholds& r);
void to_json(json& j, const TheoremMainReport& r);

void to_json(json& j, const DigitalSetWitness& w);
void to_json(json& j, const PrimeConditionCheck& c);
void to_json(json& j, const CarryStats& s);
void to_json(json& j, const CarryExtremalityReport& r);
void to_json(json& j, const DigsetteoReport& r);
void to_json(json& j, const CorollaryReport& r);

void to_json(json& j, const Xi23& x);
void to_json(json& j, const ChainFamily& f);
void to_json(json& j, const Construction& s);
void to_json(json& j, const Projection& p);
void to_json(json& j, const MuRecord& r);
void to_json(json& j, const MuTableRow& r);

// Shortest round-trip form of a double, so reports stay byte-stable.
std::string format_double(double x);

}  // namespace zqadd
