#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bvalue/montecarlo.hpp"
#include "bvalue/procedure.hpp"

namespace bvalue::report {

using json = nlohmann::ordered_json;

const char* to_string(Stage1Verdict v);
const char* to_string(Stage2Outcome o);
const char* to_string(EquivalenceVerdict v);
const char* to_string(Condition c);
const char* to_string(EebSolver s);
const char* to_string(DistMode m);
const char* to_string(SimScenario::Mode m);

json to_json(const Interval& iv);
json to_json(const TwoSampleResult& r);
json to_json(const EebResult& r);
json to_json(const ProcedureOutcome& o);
json to_json(const SimScenario& s);
json to_json(const SimReport& r);

// Common report skeleton: schema version, tool identity, command echo.
json envelope(const std::string& command, const std::vector<std::string>& argv);

}  // namespace bvalue::report
