#include "nomaee/model.hpp"

#include <cmath>
#include <string>

#include "nomaee/errors.hpp"

namespace nomaee {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw invalid_parameter(msg);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

void SystemParams::validate() const {
    require(positive_finite(slot_duration_s), "system: slot_duration_s must be positive");
    require(positive_finite(bandwidth_hz), "system: bandwidth_hz must be positive");
    require(positive_finite(noise_power_w), "system: noise_power_w must be positive");
    require(positive_finite(peak_power_w), "system: peak_power_w must be positive");
}

void UserProfile::validate(const SystemParams& params) const {
    require(positive_finite(distance_m), "user: distance_m must be positive");
    require(positive_finite(path_loss_exp), "user: path_loss_exp must be positive");
    require(std::isfinite(arrival_prob) && arrival_prob > 0.0 && arrival_prob <= 1.0,
            "user: arrival_prob must lie in (0, 1]");
    require(positive_finite(mean_burst_bits), "user: mean_burst_bits must be positive");
    require(std::isfinite(circuit_power_w) && circuit_power_w >= 0.0,
            "user: circuit_power_w must be non-negative");
    require(std::isfinite(delay_tolerance) && delay_tolerance > 0.0 && delay_tolerance < 1.0,
            "user: delay_tolerance must lie in (0, 1)");
    if (!(std::isfinite(delay_bound_s) && delay_bound_s >= params.slot_duration_s))
        throw infeasible_delay(
            "user: delay_bound_s below one slot; transmission alone takes a slot");
}

void PowerAllocation::validate(const SystemParams& params) const {
    require(!tx_power_w.empty(), "allocation: empty power vector");
    for (double p : tx_power_w) {
        require(std::isfinite(p) && p >= 0.0, "allocation: tx power must be >= 0");
        require(p <= params.peak_power_w * (1.0 + 1e-12),
                "allocation: tx power exceeds peak power");
    }
}

double channel_rate_param(const UserProfile& profile) {
    if (!(profile.distance_m > 0.0))
        throw invalid_parameter("channel_rate_param: distance must be positive");
    return std::pow(profile.distance_m, profile.path_loss_exp);
}

} // namespace nomaee
