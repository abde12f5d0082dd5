#pragma once

#include <functional>

#include "nomaee/effcap.hpp"
#include "nomaee/model.hpp"

namespace nomaee {

// Derived per-user QoS quantities: the optimal exponent, the nonempty-buffer
// probability p_b = 1 - u*L and the transmission probability
// p_tx = p + p_b - p*p_b.
struct QosState {
    QosExponent u_star;
    double nonempty_buffer_prob = 0.0;
    double tx_prob = 0.0;
};

// Smallest exponent meeting the (D_max, eps) delay-outage target:
// u* = (beta-1)/((p+beta-1)*L) with beta = eps^(-T_s/D_max).
QosExponent optimal_qos_exponent(const UserProfile& profile, const SystemParams& params);

// Delay-outage approximation P(D > d_max) at exponent u.
double delay_violation_approx(QosExponent u, const UserProfile& profile,
                              const SystemParams& params, double d_max_s);

// CCDF of the queueing delay, P(D_q > t).
double queueing_delay_ccdf(QosExponent u, const UserProfile& profile,
                           const SystemParams& params, double t_s);

// CCDF of the backlog size, p_b * exp(-u* * threshold).
double backlog_ccdf(const QosState& state, double threshold_bits);

// Full derived QoS state for a profile.
QosState qos_state(const UserProfile& profile, const SystemParams& params);

// Balance exponent: the root of alpha_b(u) - alpha_c(u) on (0, 1/L).
// `effcap_at` evaluates the user's effective capacity at exponent u.
// Provided for validation; the production pipeline uses the closed form.
QosExponent balance_qos_exponent(const UserProfile& profile,
                                 const std::function<double(double)>& effcap_at,
                                 const SystemParams& params);

} // namespace nomaee
