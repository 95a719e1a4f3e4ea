#pragma once

#include <iosfwd>
#include <string>

#include "bvalue/montecarlo.hpp"

namespace bvalue {

// Flat key=value scenario config ('#' starts a comment). Recognized keys
// match the SimScenario fields: n1, n2, mu1, mu2, sigma, alpha, beta, reps,
// seed, plus the optional mode (raw|summary, default raw). All other keys are
// rejected; every field except mode is required.
SimScenario parse_scenario(std::istream& in);
SimScenario parse_scenario_file(const std::string& path);

}  // namespace bvalue
