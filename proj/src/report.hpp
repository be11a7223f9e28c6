#pragma once

#include <string>

#include "ctengine.hpp"

namespace shaq {

// Report JSON schema:
// {"input":...,"rows":[{"place":"2"|"inf","verdicts":{...},"quotient":"a/b"},...],
//  "local_product":"a/b","torsion_quotient":"a/b","regulator_quotient":"a/b",
//  "final_quotient":"a/b","k":int,"assumptions":[str]}
std::string report_to_json(const CTReport& rep);
CTReport report_from_json(const std::string& text); // lossless round-trip

// Human-readable per-place grid.
std::string report_to_table(const CTReport& rep);

} // namespace shaq
