#include "nomaee/queue_sim.hpp"

#include <cmath>
#include <deque>

#include "nomaee/channel.hpp"
#include "nomaee/errors.hpp"

namespace nomaee {

namespace {

// Delay histograms resolve single slots up to this bound; anything longer
// lands in the overflow bucket, which is still "greater than any queried
// bound" for the delay grids we evaluate.
constexpr std::size_t kHistSlots = 16384;

struct Burst {
    std::uint64_t arrival_slot;
    std::int64_t remaining_ub;
};

void bump(std::vector<std::uint64_t>& hist, std::uint64_t& overflow, std::uint64_t slots) {
    if (slots < hist.size())
        ++hist[slots];
    else
        ++overflow;
}

} // namespace

void SimStats::merge(const SimStats& other) {
    if (users.size() != other.users.size() || slot_duration_s != other.slot_duration_s)
        throw invalid_parameter("SimStats::merge: incompatible shapes");
    for (std::size_t k = 0; k < users.size(); ++k) {
        UserSimStats& a = users[k];
        const UserSimStats& b = other.users[k];
        a.burst_count += b.burst_count;
        a.departed_bursts += b.departed_bursts;
        a.arrived_ubits += b.arrived_ubits;
        a.delivered_ubits += b.delivered_ubits;
        a.backlog_ubits += b.backlog_ubits;
        a.delivered_counted_ubits += b.delivered_counted_ubits;
        for (std::size_t i = 0; i < kHistSlots; ++i) {
            a.delay_hist[i] += b.delay_hist[i];
            a.unfinished_hist[i] += b.unfinished_hist[i];
        }
        a.delay_overflow += b.delay_overflow;
        a.unfinished_overflow += b.unfinished_overflow;
        a.sum_delay_slots += b.sum_delay_slots;
        a.tx_slots += b.tx_slots;
        a.counted_slots += b.counted_slots;
        a.energy_two_mode_j += b.energy_two_mode_j;
        a.energy_single_mode_j += b.energy_single_mode_j;
    }
}

SimStats simulate(const Scenario& scenario, const PowerAllocation& alloc,
                  const SimConfig& cfg) {
    const std::size_t n = scenario.user_count();
    alloc.validate(scenario.params);
    if (alloc.tx_power_w.size() != n)
        throw invalid_parameter("simulate: allocation length mismatch");
    if (!(cfg.n_slots > cfg.warmup_slots))
        throw invalid_parameter("simulate: n_slots must exceed warmup_slots");
    if (cfg.fixed_gains && cfg.fixed_gains->size() != n)
        throw invalid_parameter("simulate: fixed gain vector length mismatch");

    const double ts = scenario.params.slot_duration_s;
    const double bw = scenario.params.bandwidth_hz;
    const double sig2 = scenario.params.noise_power_w;

    std::vector<CounterRng> arrival_rng;
    std::vector<CounterRng> gain_rng;
    arrival_rng.reserve(n);
    gain_rng.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        arrival_rng.emplace_back(cfg.seed, stream_id(k, RngPurpose::arrival));
        gain_rng.emplace_back(cfg.seed, stream_id(k, RngPurpose::channel_gain));
    }

    SimStats stats;
    stats.slot_duration_s = ts;
    stats.users.resize(n);
    for (auto& u : stats.users) {
        u.delay_hist.assign(kHistSlots, 0);
        u.unfinished_hist.assign(kHistSlots, 0);
    }

    std::vector<std::deque<Burst>> queues(n);
    std::vector<double> gains(n, 0.0);
    std::vector<bool> active(n, false);

    for (std::uint64_t slot = 0; slot < cfg.n_slots; ++slot) {
        const bool counted = slot >= cfg.warmup_slots;

        for (std::size_t k = 0; k < n; ++k) {
            const UserProfile& prof = scenario.users[k];
            if (arrival_rng[k].next_bernoulli(prof.arrival_prob)) {
                const double bits = arrival_rng[k].next_exponential(prof.mean_burst_bits);
                const std::int64_t ub =
                    std::max<std::int64_t>(1, std::llround(bits * kMicrobitsPerBit));
                queues[k].push_back(Burst{slot, ub});
                stats.users[k].arrived_ubits += ub;
                if (counted) ++stats.users[k].burst_count;
            }
        }

        for (std::size_t k = 0; k < n; ++k) {
            gains[k] = cfg.fixed_gains ? (*cfg.fixed_gains)[k]
                                       : gain_rng[k].next_exponential(1.0 / scenario.chi[k]);
            active[k] = !queues[k].empty();
        }

        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k]) continue;
            double interference = 0.0;
            for (std::size_t i = k + 1; i < n; ++i)
                if (active[i]) interference += alloc.tx_power_w[i] * gains[i];
            const double gamma =
                alloc.tx_power_w[k] * gains[k] / (interference + sig2);
            const double service_bits = ts * bw * std::log2(1.0 + gamma);
            std::int64_t budget =
                static_cast<std::int64_t>(std::floor(service_bits * kMicrobitsPerBit));

            UserSimStats& us = stats.users[k];
            while (budget > 0 && !queues[k].empty()) {
                Burst& front = queues[k].front();
                const std::int64_t take = std::min(budget, front.remaining_ub);
                front.remaining_ub -= take;
                budget -= take;
                us.delivered_ubits += take;
                if (counted) us.delivered_counted_ubits += take;
                if (front.remaining_ub == 0) {
                    const std::uint64_t delay_slots = slot - front.arrival_slot + 1;
                    if (front.arrival_slot >= cfg.warmup_slots) {
                        ++us.departed_bursts;
                        us.sum_delay_slots += static_cast<double>(delay_slots);
                        bump(us.delay_hist, us.delay_overflow, delay_slots);
                    }
                    queues[k].pop_front();
                }
            }
        }

        if (counted) {
            for (std::size_t k = 0; k < n; ++k) {
                UserSimStats& us = stats.users[k];
                ++us.counted_slots;
                const double p = alloc.tx_power_w[k];
                const double pc = scenario.users[k].circuit_power_w;
                if (active[k]) {
                    ++us.tx_slots;
                    us.energy_two_mode_j += (pc + p) * ts;
                } else {
                    us.energy_two_mode_j += pc * ts;
                }
                us.energy_single_mode_j += (pc + p) * ts;
            }
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        UserSimStats& us = stats.users[k];
        for (const Burst& b : queues[k]) {
            us.backlog_ubits += b.remaining_ub;
            if (b.arrival_slot >= cfg.warmup_slots) {
                const std::uint64_t lower_bound = cfg.n_slots - b.arrival_slot + 1;
                bump(us.unfinished_hist, us.unfinished_overflow, lower_bound);
            }
        }
    }
    return stats;
}

SimStats simulate_pooled(const Scenario& scenario, const PowerAllocation& alloc,
                         const SimConfig& cfg, const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw invalid_parameter("simulate_pooled: no seeds");
    SimStats pooled;
    bool first = true;
    for (std::uint64_t seed : seeds) {
        SimConfig run = cfg;
        run.seed = seed;
        SimStats s = simulate(scenario, alloc, run);
        if (first) {
            pooled = std::move(s);
            first = false;
        } else {
            pooled.merge(s);
        }
    }
    return pooled;
}

ViolationEstimate empirical_delay_violation(const UserSimStats& stats, double d_max_s,
                                            double slot_duration_s) {
    if (stats.burst_count == 0)
        throw invalid_statistic("empirical_delay_violation: no bursts observed");
    if (!(d_max_s >= 0.0))
        throw invalid_parameter("empirical_delay_violation: bound must be non-negative");

    // A burst violates when delay_slots * T_s > d_max.
    const double ratio = d_max_s / slot_duration_s;
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(std::floor(ratio + 1e-9));
    if (threshold + 1 >= kHistSlots)
        throw invalid_statistic("empirical_delay_violation: bound beyond histogram range");

    std::uint64_t departed_viol = 0;
    for (std::size_t s = threshold + 1; s < kHistSlots; ++s)
        departed_viol += stats.delay_hist[s];
    departed_viol += stats.delay_overflow;

    // Unfinished bursts already older than the bound are violations; younger
    // ones are undetermined and excluded.
    std::uint64_t unfinished_viol = 0;
    for (std::size_t s = threshold + 1; s < kHistSlots; ++s)
        unfinished_viol += stats.unfinished_hist[s];
    unfinished_viol += stats.unfinished_overflow;

    const std::uint64_t n = stats.departed_bursts + unfinished_viol;
    const std::uint64_t x = departed_viol + unfinished_viol;
    if (n == 0)
        throw invalid_statistic("empirical_delay_violation: no determined bursts");

    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(x) / nn;
    const double denom = 1.0 + z * z / nn;
    const double halfwidth =
        z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;

    return ViolationEstimate{phat, halfwidth, n};
}

double empirical_tx_prob(const UserSimStats& stats) {
    if (stats.counted_slots == 0)
        throw invalid_statistic("empirical_tx_prob: no counted slots");
    return static_cast<double>(stats.tx_slots) / static_cast<double>(stats.counted_slots);
}

double mean_delay_s(const UserSimStats& stats, double slot_duration_s) {
    if (stats.departed_bursts == 0)
        throw invalid_statistic("mean_delay_s: no departed bursts");
    return stats.sum_delay_slots / static_cast<double>(stats.departed_bursts) *
           slot_duration_s;
}

double empirical_energy_efficiency(const SimStats& stats, CircuitryMode mode) {
    double bits = 0.0;
    double energy = 0.0;
    for (const auto& u : stats.users) {
        bits += static_cast<double>(u.delivered_counted_ubits) / kMicrobitsPerBit;
        energy += mode == CircuitryMode::two_mode ? u.energy_two_mode_j
                                                  : u.energy_single_mode_j;
    }
    if (!(energy > 0.0))
        throw invalid_statistic("empirical_energy_efficiency: zero consumed energy");
    return bits / energy;
}

} // namespace nomaee
