#pragma once

#include <cmath>
#include <cstdint>

namespace nomaee {

// Counter-based pseudo-random stream: output i is the splitmix64 finalizer
// applied to key + i*phi. Streams derived from (seed, stream_id) are
// independent and stateless apart from the counter, so per-user / per-purpose
// draws stay reproducible no matter how other streams are consumed.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream_id = 0)
        : key_(derive_key(seed, stream_id)) {}

    std::uint64_t next_u64() {
        return mix64(key_ + kPhi * ++counter_);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given mean (mean > 0); may return exactly 0.
    double next_exponential(double mean) {
        return -mean * std::log1p(-next_uniform());
    }

    bool next_bernoulli(double p) { return next_uniform() < p; }

    static std::uint64_t mix64(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

private:
    static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
        return mix64(mix64(seed + kPhi) ^ mix64(stream_id * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Stream id layout used across the project so that independent purposes never
// collide: (user, purpose) -> id.
enum class RngPurpose : std::uint64_t {
    channel_gain = 1,
    arrival = 2,
    tx_mode = 3,
    scratch = 4,
};

inline std::uint64_t stream_id(std::size_t user_index, RngPurpose purpose) {
    return (static_cast<std::uint64_t>(user_index) << 8) | static_cast<std::uint64_t>(purpose);
}

} // namespace nomaee
