#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bggforge/bgg_engine.hpp"
#include "bggforge/interp.hpp"

namespace bgg {

nlohmann::json to_json(const DimReport& r);
nlohmann::json to_json(const BggDiagram& g);
nlohmann::json to_json(const BggComplex& c, const std::vector<SpaceTable>& tables);
nlohmann::json to_json(const SequenceCohomology& s);
nlohmann::json to_json(const CohomologyReport& r);
nlohmann::json to_json(const WitnessCheck& w);
nlohmann::json to_json(const SuiteEntry& e);

/// Two-space indentation, keys sorted, trailing newline.
std::string serialize(const nlohmann::json& j);

}  // namespace bgg
