#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nomaee/scenario.hpp"

namespace nomaee {

// Slot-level simulator configuration. Delay statistics count bursts that
// arrive after the warmup window.
struct SimConfig {
    std::uint64_t n_slots = 0;
    std::uint64_t seed = 1;
    std::uint64_t warmup_slots = 10000;
    bool record_delay_quantiles = false;
    // Test hook: fixed per-user channel gains instead of exponential draws.
    std::optional<std::vector<double>> fixed_gains;
};

// Bit accounting uses integer micro-bits so conservation is exact.
constexpr std::int64_t kMicrobitsPerBit = 1000000;

struct UserSimStats {
    std::uint64_t burst_count = 0;      // bursts arriving after warmup
    std::uint64_t departed_bursts = 0;  // of those, fully served by the end

    std::int64_t arrived_ubits = 0;     // whole run, for conservation
    std::int64_t delivered_ubits = 0;   // whole run
    std::int64_t backlog_ubits = 0;     // left queued at the end

    std::int64_t delivered_counted_ubits = 0;  // delivered in counted slots

    // Delay of departed bursts in slots (queueing + one transmission slot),
    // resolution 1 slot up to the histogram size; larger delays overflow.
    std::vector<std::uint64_t> delay_hist;
    std::uint64_t delay_overflow = 0;
    double sum_delay_slots = 0.0;

    // Lower bounds (slots) on the delay of bursts still queued at the end.
    std::vector<std::uint64_t> unfinished_hist;
    std::uint64_t unfinished_overflow = 0;

    std::uint64_t tx_slots = 0;       // counted slots spent in transmission mode
    std::uint64_t counted_slots = 0;

    double energy_two_mode_j = 0.0;   // counted slots
    double energy_single_mode_j = 0.0;
};

struct SimStats {
    std::vector<UserSimStats> users;
    double slot_duration_s = 0.0;

    // Pool another run's counters into this one (seed replication).
    void merge(const SimStats& other);
};

// Run the slot simulation at a fixed allocation. A user is in transmission
// mode in a slot iff its buffer is nonempty after that slot's arrival.
SimStats simulate(const Scenario& scenario, const PowerAllocation& alloc,
                  const SimConfig& cfg);

// Convenience: run one simulation per seed and pool the statistics.
SimStats simulate_pooled(const Scenario& scenario, const PowerAllocation& alloc,
                         const SimConfig& cfg, const std::vector<std::uint64_t>& seeds);

struct ViolationEstimate {
    double probability = 0.0;
    double halfwidth95 = 0.0;  // Wilson 95% interval half-width
    std::uint64_t n = 0;       // bursts with a determined outcome at this bound
};

// Fraction of bursts whose delay exceeds d_max. Bursts still in the queue
// count as violations once their age alone exceeds the bound; younger
// unfinished bursts are excluded.
ViolationEstimate empirical_delay_violation(const UserSimStats& stats,
                                            double d_max_s, double slot_duration_s);

double empirical_tx_prob(const UserSimStats& stats);

double mean_delay_s(const UserSimStats& stats, double slot_duration_s);

// Delivered bits per joule under the selected accounting mode, system level.
double empirical_energy_efficiency(const SimStats& stats, CircuitryMode mode);

} // namespace nomaee
