#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torlin/curves.hpp"
#include "torlin/spectral.hpp"

namespace torlin::io {

using json = nlohmann::json;

/// Shortest decimal string that reads back to the same double.
std::string format_decimal(double x);

/// Accepts a decimal string or a JSON number. Throws MalformedInput.
double parse_decimal(const json& value);

/// {"d": int, "alpha": [decimal strings], "tau": real?, "radius": int?}
struct DirectionSpec {
  DirectionVector alpha;
  std::vector<std::string> digits;
  std::optional<double> tau;
  std::optional<std::int64_t> radius;
};

DirectionSpec parse_direction(const json& j);
json to_json(const DirectionSpec& spec);

/// {"d": int, "modes": [{"n": [ints], "re": decimal, "im": decimal}]}
TrigPoly parse_trig_poly(const json& j);
/// Lists the mean and one representative of each +-n pair.
json to_json(const TrigPoly& f);

/// A list of d trig polynomials, or {"components": [...]}.
OneForm parse_one_form(const json& j);
json to_json(const OneForm& eta);

/// {"basepoint": [decimals], "segments": [{"kind": "flow"|"transverse", "displacement": [decimals]}]}
/// Kinds are checked against `alpha` when given.
PiecewiseCurve parse_curve(const json& j, const DirectionVector* alpha = nullptr);
json to_json(const PiecewiseCurve& g);

/// A single curve object, a list of curves, or {"curves": [...]}.
CurveFamily parse_family(const json& j, const DirectionVector* alpha = nullptr);
json to_json(const CurveFamily& family);

json to_json(const LatticeVector& n);

/// Reads and parses a JSON document. Throws MalformedInput.
json read_json(const std::filesystem::path& path);

/// Writes via a temporary file and rename.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace torlin::io
