#pragma once

#include <istream>
#include <string>

#include <nlohmann/json.hpp>

#include "normlab/certificates.hpp"
#include "normlab/construction.hpp"
#include "normlab/embedding.hpp"
#include "normlab/finite_vector.hpp"
#include "normlab/spaces.hpp"

namespace normlab {

// Wire formats. Spaces: {"kind":"lp","p":num|"inf"} | {"kind":"orlicz","p","r"}
// | {"kind":"modular","p","i0"}. Vectors: dense JSON arrays, 1-based from
// position. Distance matrices: {"n":int,"d":[[...]]} or CSV rows.

void to_json(nlohmann::json& j, const SpaceSpec& space);
void to_json(nlohmann::json& j, const FiniteVector& v);
void to_json(nlohmann::json& j, const ClarksonReport& rep);
void to_json(nlohmann::json& j, const ObstructionCertificate& cert);
void to_json(nlohmann::json& j, const MidpointWitness& w);
void to_json(nlohmann::json& j, const CriterionReport& rep);
void to_json(nlohmann::json& j, const DistanceMatrix& D);
void to_json(nlohmann::json& j, const PointConfig& config);
void to_json(nlohmann::json& j, const EmbedResult& result);
void to_json(nlohmann::json& j, const ResidualResult& result);

SpaceSpec space_from_json(const nlohmann::json& j);

/// Accepts the full JSON object or the shorthand grammar
/// "lp:p" | "orlicz:p,r" | "modular:p" (i0 from the construction rule)
/// | "modular:p,i0".
SpaceSpec parse_space(const std::string& text);

FiniteVector vector_from_json(const nlohmann::json& j);

DistanceMatrix dmatrix_from_json(const nlohmann::json& j);
DistanceMatrix dmatrix_from_csv(std::istream& in);

}  // namespace normlab
