#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nomaee/model.hpp"
#include "nomaee/quadrature.hpp"
#include "nomaee/rng.hpp"

namespace nomaee {

// Per-bit QoS exponent u > 0 (1/bits); larger u means faster tail decay.
struct QosExponent {
    double value = 0.0;

    explicit QosExponent(double u);
};

struct EffCapOptions {
    QuadratureControl quad{};

    // Alternate (incorrect) reading of the integral substitution where the
    // gain scale comes from an interferer's power instead of the decoded
    // user's own. Kept only as a negative control for the oracle cross-check.
    bool substitution_uses_interferer_power = false;
};

// Inputs of one effective-capacity evaluation: user `user_index` decoded
// against interferers i > user_index, each transmitting independently with
// probability tx_probs[i].
struct EffCapQuery {
    std::size_t user_index = 0;
    PowerAllocation alloc;
    std::vector<double> tx_probs;
    QosExponent u;
    SystemParams params;
    std::vector<UserProfile> profiles;

    void validate() const;
};

// Effective bandwidth of the Bernoulli-exponential arrival process, bits/s.
// Requires u*L < 1 or the arrival moment diverges.
double effective_bandwidth(const UserProfile& profile, QosExponent u,
                           const SystemParams& params);

// Two-user closed forms: the first (near) user mixes the interference-free
// and interfered SINR densities by the second user's transmission
// probability; the second user is decoded last and sees noise only.
double effcap_two_user_first(const PowerAllocation& alloc, double tx_prob_second,
                             QosExponent u, const SystemParams& params,
                             const std::vector<UserProfile>& profiles,
                             const EffCapOptions& opt = {});
double effcap_two_user_second(const PowerAllocation& alloc, QosExponent u,
                              const SystemParams& params,
                              const std::vector<UserProfile>& profiles,
                              const EffCapOptions& opt = {});

// K-user effective capacity via the single-integral form over (0,1].
// `clamped` (optional) reports that the log argument hit the 1e-300 guard.
double effcap_k_user(const EffCapQuery& query, const EffCapOptions& opt = {},
                     bool* clamped = nullptr);

// Long-double evaluation for validation suites whose tolerance sits near the
// double-precision noise floor.
long double effcap_k_user_precise(const EffCapQuery& query,
                                  const EffCapOptions& opt = {});

struct MonteCarloEstimate {
    double value = 0.0;      // bits/s
    double std_error = 0.0;  // delta-method standard error, bits/s
};

struct MonteCarloOptions {
    // Test hook: fixed channel gains in place of exponential draws.
    std::optional<std::vector<double>> deterministic_gains;
};

// Plug-in estimator of the effective capacity from sampled channel gains and
// interferer on/off modes.
MonteCarloEstimate effcap_monte_carlo(const EffCapQuery& query,
                                      std::size_t n_samples, CounterRng& rng,
                                      const MonteCarloOptions& opt = {});

// Sum of per-user effective capacities at the given exponents.
double sum_effective_capacity(const PowerAllocation& alloc,
                              const std::vector<QosExponent>& qos,
                              const std::vector<double>& tx_probs,
                              const SystemParams& params,
                              const std::vector<UserProfile>& profiles,
                              const EffCapOptions& opt = {});

namespace detail {

// Flat-array core shared by the double and long-double instantiations; the
// optimizer's inner loops call this directly to avoid per-candidate copies.
template <class Real>
Real effcap_k_user_core(std::size_t k, std::span<const double> tx_power_w,
                        std::span<const double> chi,
                        std::span<const double> tx_probs, double u,
                        const SystemParams& params, const EffCapOptions& opt,
                        bool* clamped = nullptr);

extern template double effcap_k_user_core<double>(
    std::size_t, std::span<const double>, std::span<const double>,
    std::span<const double>, double, const SystemParams&, const EffCapOptions&,
    bool*);
extern template long double effcap_k_user_core<long double>(
    std::size_t, std::span<const double>, std::span<const double>,
    std::span<const double>, double, const SystemParams&, const EffCapOptions&,
    bool*);

} // namespace detail

} // namespace nomaee
