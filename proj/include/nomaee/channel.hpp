#pragma once

#include <vector>

#include "nomaee/model.hpp"
#include "nomaee/rng.hpp"

namespace nomaee {

// Draw one gain per user, each exponential with rate chi_k = d_k^beta.
ChannelRealization sample_gains(const std::vector<UserProfile>& profiles, CounterRng& rng);

// SINR seen when decoding user k. Decoding order is ascending index (users
// are indexed by increasing distance); interference comes from active users
// with larger index only, earlier signals are already cancelled.
double sinr(std::size_t k,
            const PowerAllocation& alloc,
            const ChannelRealization& gains,
            const std::vector<bool>& active,
            const SystemParams& params);

// Shannon rate B*log2(1+sinr) in bits per second.
double achievable_rate(double sinr_value, const SystemParams& params);

// One slot's arrival in bits: 0 with probability 1-p, otherwise an
// exponential burst with mean L bits.
double sample_arrival(const UserProfile& profile, CounterRng& rng);

// Mean arrival rate p*L/T_s in bits per second.
double mean_arrival_rate(const UserProfile& profile, const SystemParams& params);

} // namespace nomaee
