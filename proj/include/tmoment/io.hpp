#pragma once

#include "tmoment/extremal.hpp"
#include "tmoment/moments.hpp"
#include "tmoment/synth.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tmoment {

using Json = nlohmann::ordered_json;

// Auto: integers, p/q and surds are exact, decimals are floats.
// Exact: decimals are read exactly.  Float: every value becomes a float.
enum class NumberMode { Auto, Exact, Float };

NumberMode parse_number_mode(const std::string& s);

// All readers throw InputError naming the offending key path.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

Scalar read_scalar(const Json& v, const std::string& path, NumberMode mode);
Json scalar_to_json(const Scalar& s);

// {"d", "degree", "moments": [{"idx": [...], "value": ...}]}
Multisequence read_moments(const Json& j, NumberMode mode = NumberMode::Auto);
Json moments_to_json(const Multisequence& beta);

// {"d", "points": [[...], ...]}
std::vector<Point> read_points(const Json& j, NumberMode mode = NumberMode::Auto);
Json points_to_json(int d, const std::vector<Point>& points);

// {"d", "atoms": [{"point": [...], "density": ...}]}
AtomicMeasure read_measure(const Json& j, NumberMode mode = NumberMode::Auto);
Json measure_to_json(const AtomicMeasure& mu);

// {"d", "atoms": [[...]], "weights": [...], "derivation": {"a0", "point", "direction"}}
SignedFunctional read_functional(const Json& j, NumberMode mode = NumberMode::Auto);
Json functional_to_json(const SignedFunctional& f);

}  // namespace tmoment
