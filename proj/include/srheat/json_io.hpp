#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "srheat/leading.hpp"
#include "srheat/mc_engine.hpp"
#include "srheat/structure_constants.hpp"
#include "srheat/vf_analyzer.hpp"

namespace srheat {

// Structure-constant documents: {"n": 2, "matrices": [[[0,1],[-1,0]]]}.
// The literal name "heisenberg" is accepted anywhere a document is.
StructureConstants parse_structure_json(const std::string& text);
std::string structure_to_json(const StructureConstants& c);

nlohmann::json to_json(const FiltrationReport& report);
nlohmann::json to_json(const C0Result& result);
nlohmann::json to_json(const SimEstimate& estimate);

// RFC-4180: comma separators, CRLF row endings, quotes doubled inside
// quoted fields. Numeric cells use round-trip precision.
std::string csv_cell(const std::string& raw);
std::string csv_number(double value);
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace srheat
