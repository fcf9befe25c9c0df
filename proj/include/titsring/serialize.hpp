#pragma once

// Deterministic text, CSV and JSON renderings of the library's results.

#include <string>
#include <vector>

#include "titsring/steinberg.hpp"

namespace titsring {

/// Header "n,<label>,...", then one row per n starting at 1.
std::string rank_table_csv(const std::vector<RankTable>& tables);
/// {"schema_version":1,"tables":[{"ring":..,"ranks":{"1":"1",...}}]}; values are decimal strings.
std::string rank_table_json(const std::vector<RankTable>& tables);
std::string rank_table_text(const std::vector<RankTable>& tables);

struct HomologyReport {
    std::string ring;
    int n = 0;
    int filtration = 0;  ///< 0 for the full complex
    HomologyResult result;
};

std::string homology_json(const HomologyReport& report);
std::string homology_text(const HomologyReport& report);

std::string complex_json(const TitsComplex& complex);
std::string complex_text(const TitsComplex& complex);

std::string summands_json(const FreeModule& module, const std::vector<Summand>& summands);
std::string summands_text(const FreeModule& module, const std::vector<Summand>& summands);

}  // namespace titsring
