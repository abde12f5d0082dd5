#include "nomaee/scenario.hpp"

#include <algorithm>

#include "nomaee/errors.hpp"

namespace nomaee {

std::vector<double> Scenario::tx_probs() const {
    std::vector<double> p;
    p.reserve(qos.size());
    for (const auto& q : qos) p.push_back(q.tx_prob);
    return p;
}

std::vector<QosExponent> Scenario::exponents() const {
    std::vector<QosExponent> u;
    u.reserve(qos.size());
    for (const auto& q : qos) u.push_back(q.u_star);
    return u;
}

EffCapQuery Scenario::query(std::size_t k, const PowerAllocation& alloc) const {
    if (k >= users.size()) throw invalid_parameter("scenario: user index out of range");
    return EffCapQuery{k, alloc, tx_probs(), qos[k].u_star, params, users};
}

Scenario Scenario::build(SystemParams params, std::vector<UserProfile> users,
                         EnergyModel energy) {
    params.validate();
    if (users.empty()) throw invalid_parameter("scenario: needs at least one user");
    // Decoding order is fixed by distance: nearest user decoded first.
    std::stable_sort(users.begin(), users.end(),
                     [](const UserProfile& a, const UserProfile& b) {
                         return a.distance_m < b.distance_m;
                     });
    Scenario s;
    s.params = params;
    s.users = std::move(users);
    s.energy = energy;
    s.chi.reserve(s.users.size());
    s.qos.reserve(s.users.size());
    for (const auto& u : s.users) {
        u.validate(params);
        s.chi.push_back(channel_rate_param(u));
        s.qos.push_back(qos_state(u, params));
    }
    return s;
}

Scenario Scenario::with_scaled_exponents(double u_scale) const {
    if (!(u_scale > 0.0))
        throw invalid_parameter("scenario: exponent scale must be positive");
    Scenario s = *this;
    for (std::size_t k = 0; k < s.users.size(); ++k) {
        const double u = qos[k].u_star.value * u_scale;
        const double ul = u * s.users[k].mean_burst_bits;
        if (ul >= 1.0)
            throw invalid_parameter("scenario: scaled exponent has u*L >= 1");
        const double pb = 1.0 - ul;
        const double p = s.users[k].arrival_prob;
        s.qos[k] = QosState{QosExponent(u), pb, p + pb - p * pb};
    }
    return s;
}

double energy_efficiency(const Scenario& scenario, const PowerAllocation& alloc,
                         const EffCapOptions& opt) {
    if (alloc.tx_power_w.size() != scenario.user_count())
        throw invalid_parameter("energy_efficiency: allocation length mismatch");
    const double capacity = sum_effective_capacity(alloc, scenario.exponents(),
                                                   scenario.tx_probs(), scenario.params,
                                                   scenario.users, opt);
    double power = 0.0;
    for (std::size_t k = 0; k < scenario.user_count(); ++k)
        power += total_power(scenario.users[k], scenario.qos[k], alloc.tx_power_w[k],
                             scenario.energy);
    if (!(power > 0.0)) throw invalid_parameter("energy_efficiency: zero total power");
    return capacity / power;
}

} // namespace nomaee
