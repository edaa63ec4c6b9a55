#pragma once

#include "skewstab/measures/disintegration.hpp"

#include <json.hpp>

#include <string>

namespace skewstab::measures {

/// Shortest decimal string that round-trips the double ("%.17g").
std::string format_double(double x);

/// Reads a number given as a JSON number, a decimal string or "p/q".
double parse_number(const nlohmann::json& v);

nlohmann::json fiber_to_json(const FiberMeasure& mu);
FiberMeasure fiber_from_json(const nlohmann::json& atoms, int dimension);

/// {"n_cells": N, "dimension": d, "fibers": [[[[pos...], "w"], ...], ...]}
nlohmann::json to_json(const Disintegration& mu);

/// Accepts the explicit form above or the generators
/// {"kind": "lebesgue", "n_cells": N, "atoms": M} and
/// {"kind": "product", "n_cells": N, "fiber": [[[pos], w], ...]}. Unknown keys are rejected.
Disintegration from_json(const nlohmann::json& doc);

}  // namespace skewstab::measures
