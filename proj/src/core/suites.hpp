#pragma once

#include <string>

#include "report.hpp"
#include "scenario.hpp"

namespace vf4 {

/// Runtime verification suites behind `verify --suite <name>`:
/// all | geom | surface | ring | minilayer | layer | full.
/// Scenario keys may override the default parameters.
Report run_suite(const std::string& name, const Scenario& s);

}  // namespace vf4
