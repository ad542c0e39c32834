#pragma once

#include "cmx/arrangement.hpp"
#include "cmx/cells.hpp"
#include "cmx/families.hpp"

#include <json.hpp>

namespace cmx {

using json = nlohmann::json;

json poly_json(const MPoly& f);
MPoly poly_from_json(const RingPtr& ring, const json& j);
// [{"w": element index, "coeff": polynomial}], support only
json pbw_json(const PBW& z);
PBW pbw_from_json(const AlgPtr& a, const json& j);
json ring_json(const RingPtr& r);

json upoly_json(const UPoly& p);
UPoly upoly_from_json(const json& j);
json cyclo_json(const Cyclo& c);
Cyclo cyclo_from_json(const json& j);

// parts as lists of character labels
json partition_json(const ReflectionGroup& g, const FamilyPartition& p);
FamilyPartition partition_from_json(const ReflectionGroup& g, const json& j);
json point_json(const ReflectionGroup& g, const ParamPoint& p);
ParamPoint point_from_json(const ReflectionGroup& g, const json& j);

json cellular_json(const ReflectionGroup& g, const CellularCharacter& c);
CellularCharacter cellular_from_json(const ReflectionGroup& g, const json& j);

json group_info_json(const ReflectionGroup& g);

}  // namespace cmx
