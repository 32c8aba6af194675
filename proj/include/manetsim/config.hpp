#pragma once

#include <string>

#include "manetsim/scenario.hpp"

namespace manetsim {

struct GridConfig {
  ScenarioConfig base;  // protocol/n_nodes/spacing/mobility overridden per cell
  std::vector<Protocol> protocols = {Protocol::Aodv, Protocol::Dsdv};
  std::vector<uint32_t> node_counts = {4, 9, 16, 25, 36, 49, 64};
  std::vector<double> spacings = {20.0, 50.0, 100.0, 150.0};
  bool include_mobility = true;
  uint32_t mobility_nodes = 25;
};

// Line-oriented `key = value` text; '#' starts a comment; unknown keys are
// rejected. Grid files accept the same keys plus the grid_* axes.
ScenarioConfig parse_scenario_config(const std::string& text);
GridConfig parse_grid_config(const std::string& text);

ScenarioConfig load_scenario_config(const std::string& path);
GridConfig load_grid_config(const std::string& path);

}  // namespace manetsim
