#include "nomaee/channel.hpp"

#include <cmath>

#include "nomaee/errors.hpp"

namespace nomaee {

ChannelRealization sample_gains(const std::vector<UserProfile>& profiles, CounterRng& rng) {
    if (profiles.empty()) throw invalid_parameter("sample_gains: no user profiles");
    ChannelRealization real;
    real.gains.reserve(profiles.size());
    for (const auto& p : profiles) {
        const double chi = channel_rate_param(p);
        real.gains.push_back(rng.next_exponential(1.0 / chi));
    }
    return real;
}

double sinr(std::size_t k, const PowerAllocation& alloc, const ChannelRealization& gains,
            const std::vector<bool>& active, const SystemParams& params) {
    const std::size_t n = alloc.tx_power_w.size();
    if (gains.gains.size() != n || active.size() != n)
        throw invalid_parameter("sinr: inconsistent vector lengths");
    if (k >= n || !active[k])
        throw invalid_parameter("sinr: user is not in the active set");
    double interference = 0.0;
    for (std::size_t i = k + 1; i < n; ++i)
        if (active[i]) interference += alloc.tx_power_w[i] * gains.gains[i];
    return alloc.tx_power_w[k] * gains.gains[k] / (interference + params.noise_power_w);
}

double achievable_rate(double sinr_value, const SystemParams& params) {
    if (!(sinr_value >= 0.0))
        throw invalid_parameter("achievable_rate: SINR must be non-negative");
    return params.bandwidth_hz * std::log2(1.0 + sinr_value);
}

double sample_arrival(const UserProfile& profile, CounterRng& rng) {
    if (!rng.next_bernoulli(profile.arrival_prob)) return 0.0;
    return rng.next_exponential(profile.mean_burst_bits);
}

double mean_arrival_rate(const UserProfile& profile, const SystemParams& params) {
    return profile.arrival_prob * profile.mean_burst_bits / params.slot_duration_s;
}

} // namespace nomaee
