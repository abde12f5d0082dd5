#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nomaee/config.hpp"

namespace nomaee {

// Command-line overrides; flags win over config values.
struct RunOverrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;  // replaces the seed list
};

// Each command writes its CSVs plus a provenance file into the resolved
// output directory and returns a process exit status.

// Solve the scenario and write the per-user allocation plus the Dinkelbach
// trace. On solver failure the trace is still written and the status is
// nonzero.
int cmd_optimize(const ScenarioConfig& config, const RunOverrides& ovr = {});

// Delay-validation study: analytic delay-outage curve vs simulated violation
// probabilities at the optimized allocation.
int cmd_fig4(const ScenarioConfig& config, const RunOverrides& ovr = {});

// Energy-efficiency vs delay-bound study for both circuitry modes, analytic
// and simulated.
int cmd_fig5(const ScenarioConfig& config, const RunOverrides& ovr = {});

// Oracle cross-check suite; `properties` selects which checks run (empty
// list = error, caller passes all names by default).
int cmd_validate(const ScenarioConfig& config, const std::vector<std::string>& properties,
                 const RunOverrides& ovr = {});

std::vector<std::string> all_validate_properties();

std::string resolve_output_dir(const ScenarioConfig& config, const RunOverrides& ovr);

} // namespace nomaee
