#pragma once

#include <json.hpp>

#include "coniclines/moduli_maps.hpp"
#include "coniclines/reconstruction.hpp"
#include "coniclines/stable_trees.hpp"

namespace coniclines {

using nlohmann::json;

// Integer triples and conic coefficients are emitted as JSON integer arrays;
// values outside the int64 range abort with invalid_argument (they do not
// occur for the supported inputs).
json point_to_json(const ProjectivePoint& p);
ProjectivePoint point_from_json(const json& j);

json line_to_json(const ProjectiveLine& l);
ProjectiveLine line_from_json(const json& j);

json conic_to_json(const Conic& c);
Conic conic_from_json(const json& j);

json marked_conic_to_json(const MarkedConic& k);
MarkedConic marked_conic_from_json(const json& j);

json line_config_to_json(const LineConfig& r);
LineConfig line_config_from_json(const json& j);

json verdict_to_json(const StabilityVerdict& v);

json binary_form_to_json(const BinaryForm& b);
BinaryForm binary_form_from_json(const json& j);

json tree_to_json(const PointedTree& t);
PointedTree tree_from_json(const json& j);

json principal_parts_to_json(const std::vector<PrincipalPart>& parts);

} // namespace coniclines
