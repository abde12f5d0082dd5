#pragma once

#include <vector>

#include "nomaee/effcap.hpp"
#include "nomaee/energy.hpp"
#include "nomaee/model.hpp"
#include "nomaee/qos.hpp"

namespace nomaee {

// A fully resolved scenario: validated users in decoding order (ascending
// distance), their channel rate parameters and derived QoS states.
struct Scenario {
    SystemParams params;
    std::vector<UserProfile> users;
    std::vector<double> chi;       // d^beta per user
    std::vector<QosState> qos;
    EnergyModel energy;

    std::size_t user_count() const { return users.size(); }
    std::vector<double> tx_probs() const;
    std::vector<QosExponent> exponents() const;

    EffCapQuery query(std::size_t k, const PowerAllocation& alloc) const;

    static Scenario build(SystemParams params, std::vector<UserProfile> users,
                          EnergyModel energy = {});

    // Same scenario with every exponent scaled by `u_scale`; the buffer and
    // transmission probabilities are recomputed from the scaled exponents.
    Scenario with_scaled_exponents(double u_scale) const;
};

// Sum effective capacity over total expected power, bits per joule.
double energy_efficiency(const Scenario& scenario, const PowerAllocation& alloc,
                         const EffCapOptions& opt = {});

} // namespace nomaee
