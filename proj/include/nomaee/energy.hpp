#pragma once

#include "nomaee/model.hpp"
#include "nomaee/qos.hpp"

namespace nomaee {

// Two-mode circuitry consumes transmit power only while transmitting
// (expected cost p_tx * P_tx); single-mode transmits every slot.
enum class CircuitryMode { two_mode, single_mode };

struct EnergyModel {
    CircuitryMode mode = CircuitryMode::two_mode;
};

const char* circuitry_mode_name(CircuitryMode mode);

// Expected total power drawn by one user: P_c + p_tx*P_tx (two-mode) or
// P_c + P_tx (single-mode).
double total_power(const UserProfile& profile, const QosState& state,
                   double tx_power_w, const EnergyModel& model);

} // namespace nomaee
