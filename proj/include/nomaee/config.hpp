#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nomaee/optimizer.hpp"
#include "nomaee/queue_sim.hpp"
#include "nomaee/scenario.hpp"

namespace nomaee {

// Parsed scenario file: block-structured key/value text, see README for the
// format. All dB/dBm quantities are converted to linear units here; the rest
// of the library never sees decibels.
struct ScenarioConfig {
    SystemParams system;
    std::vector<UserProfile> users;
    CircuitryMode circuitry = CircuitryMode::two_mode;

    OptimizerOptions optimizer;

    std::uint64_t sim_n_slots = 10000000;
    std::uint64_t sim_warmup_slots = 10000;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    bool record_delay_quantiles = false;

    std::vector<double> fig4_delay_grid_ms;       // default: 1..2*max(D_max)
    std::vector<double> fig5_delay_bound_grid_ms; // default: {10,15,20,25,30}

    std::string output_dir;  // may be empty: resolved by the CLI

    std::string source_path;

    Scenario scenario() const;

    // Re-emit every resolved value in the config format.
    void echo_resolved(std::ostream& os) const;

    std::vector<double> fig4_grid_or_default() const;
    std::vector<double> fig5_grid_or_default() const;
};

// Parse and validate a scenario file. Unknown keys, unit violations and
// invariant failures throw config_error naming the offending file:line/key.
ScenarioConfig parse_config(const std::string& path);

// Parse from an in-memory string (used by tests); `name` labels diagnostics.
ScenarioConfig parse_config_text(const std::string& text, const std::string& name);

} // namespace nomaee
