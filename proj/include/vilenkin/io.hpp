#pragma once

// Serialization of cell arrays:
//   JSON  {"radix": [..], "resolution": N, "values": [[re, im], ..]}
//   CSV   header "rank,re,im", one row per cell in rank order.
// Values are written with 17 significant digits so files round-trip exactly.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

nlohmann::json to_json(const CylinderFunction& f);
nlohmann::json to_json(const Spectrum& s);
CylinderFunction function_from_json(const nlohmann::json& j);
Spectrum spectrum_from_json(const nlohmann::json& j);

void write_csv(std::ostream& out, const CylinderFunction& f);
void write_csv(std::ostream& out, const Spectrum& s);
/// The radix and resolution are not part of the CSV schema and must be given.
CylinderFunction function_from_csv(std::istream& in, const Radix& radix, std::size_t resolution);

}  // namespace vilenkin
