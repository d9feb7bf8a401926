#ifndef MISE_CONFIG_HPP
#define MISE_CONFIG_HPP

#include <string>
#include <vector>

#include "mise/sim.hpp"
#include "mise/workload.hpp"

namespace mise {

// A full experiment: flat `key = value` text with `[section]` headers and
// one `[app]` section per application (see README for the schema).
struct ExperimentConfig {
  SimConfig sim;
  std::vector<AppSpec> apps;
  std::string output = "out.csv";
  std::vector<double> sweep_bounds;  // for the sweep-bounds command
};

// Parses and validates a config file. Referenced trace files must exist.
ExperimentConfig load_config(const std::string& path);

}  // namespace mise

#endif  // MISE_CONFIG_HPP
