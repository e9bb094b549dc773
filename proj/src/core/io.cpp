#include "vilenkin/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace vilenkin {

namespace {

template <class Tag>
nlohmann::json cells_to_json(const detail::CellArray<Tag>& cells) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : cells.values()) values.push_back({v.real(), v.imag()});
  return {{"radix", std::vector<unsigned>(cells.radix()->generators().begin(),
                                          cells.radix()->generators().end())},
          {"resolution", cells.resolution()},
          {"values", std::move(values)}};
}

template <class Cells>
Cells cells_from_json(const nlohmann::json& j) {
  try {
    auto radix = make_radix(j.at("radix").get<std::vector<unsigned>>());
    const auto resolution = j.at("resolution").get<std::size_t>();
    std::vector<Complex> values;
    for (const auto& pair : j.at("values")) {
      if (!pair.is_array() || pair.size() != 2) throw_usage("value entries must be [re, im]");
      values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return Cells(std::move(radix), resolution, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw_usage(std::string("malformed cell array JSON: ") + e.what());
  }
}

template <class Tag>
void cells_to_csv(std::ostream& out, const detail::CellArray<Tag>& cells) {
  out << "rank,re,im\n";
  char buf[96];
  for (Index t = 0; t < cells.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(t),
                  cells[t].real(), cells[t].imag());
    out << buf;
  }
}

}  // namespace

nlohmann::json to_json(const CylinderFunction& f) { return cells_to_json(f); }
nlohmann::json to_json(const Spectrum& s) { return cells_to_json(s); }
CylinderFunction function_from_json(const nlohmann::json& j) {
  return cells_from_json<CylinderFunction>(j);
}
Spectrum spectrum_from_json(const nlohmann::json& j) { return cells_from_json<Spectrum>(j); }

void write_csv(std::ostream& out, const CylinderFunction& f) { cells_to_csv(out, f); }
void write_csv(std::ostream& out, const Spectrum& s) { cells_to_csv(out, s); }

CylinderFunction function_from_csv(std::istream& in, const Radix& radix, std::size_t resolution) {
  CylinderFunction f(radix, resolution);
  std::string line;
  if (!std::getline(in, line) || line != "rank,re,im") throw_usage("CSV header must be rank,re,im");
  std::vector<bool> seen(f.size(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    unsigned long long t = 0;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(row >> t >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
      throw_usage("malformed CSV row '" + line + "'");
    }
    if (t >= f.size()) throw_capacity("CSV rank " + std::to_string(t) + " out of range");
    f[t] = Complex{re, im};
    seen[t] = true;
  }
  for (Index t = 0; t < f.size(); ++t) {
    if (!seen[t]) throw_usage("CSV is missing rank " + std::to_string(t));
  }
  return f;
}

}  // namespace vilenkin
