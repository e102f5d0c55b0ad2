#pragma once

#include <json.hpp>

#include "vtorus/admissibility.hpp"
#include "vtorus/green.hpp"
#include "vtorus/hoelder.hpp"
#include "vtorus/hypothesis_h.hpp"
#include "vtorus/resolvent.hpp"
#include "vtorus/simulate.hpp"
#include "vtorus/spectrum.hpp"
#include "vtorus/uniqueness.hpp"

namespace vtorus {

using json = nlohmann::json;

json to_json(const ResolventGrid& grid);
json to_json(const AdmissibilityPoint& p);
json to_json(const AdmissibilityReport& r);
json to_json(const HypothesisHReport& r);
json to_json(const SpectrumValidation& v);
json to_json(const IncrementTrend& t);
json to_json(const RegularitySums& r);
json to_json(const GdValue& v);
json to_json(const PairingResult& r);
json to_json(const SimulationConfig& c);
json to_json(const LinearFit& f);
json to_json(const HoelderResult& r);
json to_json(const UniquenessReport& r);
json to_json(const IndexSet& s);

SimulationConfig simulation_config_from_json(const json& j);

}  // namespace vtorus
