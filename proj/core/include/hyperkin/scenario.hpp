#pragma once

#include <string>
#include <vector>

#include "hyperkin/surface.hpp"

namespace hyperkin {

struct GridSpec {
  std::vector<int> counts;   // samples per parameter; empty means 17 each
  double t0 = 1.0;
  double shrink = 0.05;      // fraction trimmed from each domain end
  double fd_step = 1e-4;     // tau-probe offset for finite-difference routes
};

struct Scenario {
  std::string name;
  std::string description;
  MotionSpec motion;
  GridSpec grid;
};

const std::vector<Scenario>& builtin_scenarios();

// Throws ValidationError listing the catalog when the name is unknown.
const Scenario& find_scenario(const std::string& name);

// Structured text, schema "hyperkin-scenario/1". See the README for the
// line grammar. Errors carry the 1-based line number.
Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

}  // namespace hyperkin
