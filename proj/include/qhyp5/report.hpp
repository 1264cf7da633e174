#pragma once

#include <json.hpp>

#include "qhyp5/rational.hpp"
#include "qhyp5/resolve.hpp"

namespace qhyp5 {

const char* tool_version();

nlohmann::json census_json(const FiberCensus& c);
nlohmann::json invariants_json(const SurfaceInvariants& inv);
nlohmann::json lattice_json(const GramLattice& lat, std::optional<int> r, bool include_gram = true);
nlohmann::json sections_json(const std::vector<SectionCandidate>& sections);
nlohmann::json places_json(const std::vector<Place>& places);
nlohmann::json transforms_json(const std::vector<Transform>& transforms);

struct ReportResult {
    nlohmann::json doc;
    /// True when pa = 0 but the census matches no Table 3 row (exit code 2).
    bool consistency_failure = false;
};

/// The full classification report for one input equation.
ReportResult classify_report(const std::string& phi_text, int field);

}  // namespace qhyp5
