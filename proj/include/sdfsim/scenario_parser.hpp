#pragma once

#include <stdexcept>
#include <string>

#include "sdfsim/scenario.hpp"

namespace sdfsim {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parses the scenario file format (sections [emitter], [channel], [sim],
// [timeline] and array sections [[uav]] / [[uav.segment]]). Unknown keys are
// rejected. Throws ParseError with line-numbered diagnostics. The returned
// scenario is parsed but not yet validated; call Scenario::validate().
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

}  // namespace sdfsim
