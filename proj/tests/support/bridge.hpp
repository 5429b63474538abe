#pragma once

#include <string>
#include <vector>

#include "oracle.hpp"
#include "uiml/behavior.hpp"

namespace uiml::testing {

std::vector<std::string> describe(const std::vector<ActionEffect>& effects);
OracleState observe(const RuntimeState& rt);
EventInstance to_instance(const OracleEvent& ev);

}  // namespace uiml::testing
