#pragma once

#include <nlohmann/json.hpp>

#include "kgdelta/classify.hpp"

namespace kgdelta {

/// Infinite interval ends are written as the strings "+inf" / "-inf".
nlohmann::json interval_set_json(const RealIntervalSet& set);

/// SpectrumReport as JSON (schema 1).  `verbose` adds the root-candidate audit trail.
nlohmann::json to_json(const SpectrumReport& report, bool verbose = false);

}  // namespace kgdelta
