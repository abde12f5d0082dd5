#include "nomaee/energy.hpp"

#include "nomaee/errors.hpp"

namespace nomaee {

const char* circuitry_mode_name(CircuitryMode mode) {
    return mode == CircuitryMode::two_mode ? "two_mode" : "single_mode";
}

double total_power(const UserProfile& profile, const QosState& state,
                   double tx_power_w, const EnergyModel& model) {
    if (!(tx_power_w >= 0.0))
        throw invalid_parameter("total_power: tx power must be non-negative");
    const double duty = model.mode == CircuitryMode::two_mode ? state.tx_prob : 1.0;
    return profile.circuit_power_w + duty * tx_power_w;
}

} // namespace nomaee
