#pragma once

#include <cstddef>
#include <vector>

namespace nomaee {

// Global slot/radio constants, all in linear units (watts, hertz, seconds).
struct SystemParams {
    double slot_duration_s = 0.0;  // T_s
    double bandwidth_hz = 0.0;     // B
    double noise_power_w = 0.0;    // sigma^2
    double peak_power_w = 0.0;     // P_max

    void validate() const;
};

// Per-user traffic, link and delay-QoS profile.
//
// The channel gain |h_k|^2 is exponential with rate chi_k = d_k^beta, i.e.
// mean received power P * d^-beta.
struct UserProfile {
    double distance_m = 0.0;
    double path_loss_exp = 0.0;    // beta
    double arrival_prob = 0.0;     // p_k in (0, 1]
    double mean_burst_bits = 0.0;  // L
    double circuit_power_w = 0.0;  // P_k^c
    double delay_bound_s = 0.0;    // D_max
    double delay_tolerance = 0.0;  // eps in (0, 1)

    void validate(const SystemParams& params) const;
};

// One slot's channel gains, index-aligned with the user list.
struct ChannelRealization {
    std::vector<double> gains;
};

// Transmit powers in watts, one per user.
struct PowerAllocation {
    std::vector<double> tx_power_w;

    void validate(const SystemParams& params) const;
};

// Rate parameter chi = d^beta of the exponential channel-gain distribution.
double channel_rate_param(const UserProfile& profile);

} // namespace nomaee
