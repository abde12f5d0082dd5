#include "nomaee/qos.hpp"

#include <cmath>

#include "nomaee/errors.hpp"

namespace nomaee {

QosExponent optimal_qos_exponent(const UserProfile& profile, const SystemParams& params) {
    profile.validate(params);
    // beta = eps^(-T_s/D_max); the boundary exponent meeting the target.
    const double beta = std::pow(profile.delay_tolerance,
                                 -params.slot_duration_s / profile.delay_bound_s);
    const double u = (beta - 1.0) /
                     ((profile.arrival_prob + beta - 1.0) * profile.mean_burst_bits);
    return QosExponent(u);
}

namespace {

// Base ratio of the delay CCDF, (1-uL)/(1-uL+p*uL).
double delay_base(QosExponent u, const UserProfile& profile) {
    const double ul = u.value * profile.mean_burst_bits;
    if (!(ul > 0.0 && ul < 1.0))
        throw invalid_parameter("delay ccdf: requires 0 < u*L < 1");
    const double pb = 1.0 - ul;
    return pb / (pb + profile.arrival_prob * ul);
}

} // namespace

double delay_violation_approx(QosExponent u, const UserProfile& profile,
                              const SystemParams& params, double d_max_s) {
    if (!(d_max_s >= params.slot_duration_s))
        throw infeasible_delay("delay_violation_approx: bound below one slot");
    return std::pow(delay_base(u, profile), d_max_s / params.slot_duration_s);
}

double queueing_delay_ccdf(QosExponent u, const UserProfile& profile,
                           const SystemParams& params, double t_s) {
    if (!(t_s >= 0.0))
        throw invalid_parameter("queueing_delay_ccdf: time must be non-negative");
    return std::pow(delay_base(u, profile), t_s / params.slot_duration_s + 1.0);
}

double backlog_ccdf(const QosState& state, double threshold_bits) {
    if (!(threshold_bits >= 0.0))
        throw invalid_parameter("backlog_ccdf: threshold must be non-negative");
    return state.nonempty_buffer_prob * std::exp(-state.u_star.value * threshold_bits);
}

QosState qos_state(const UserProfile& profile, const SystemParams& params) {
    const QosExponent u = optimal_qos_exponent(profile, params);
    const double pb = 1.0 - u.value * profile.mean_burst_bits;
    const double p = profile.arrival_prob;
    return QosState{u, pb, p + pb - p * pb};
}

QosExponent balance_qos_exponent(const UserProfile& profile,
                                 const std::function<double(double)>& effcap_at,
                                 const SystemParams& params) {
    const double inv_l = 1.0 / profile.mean_burst_bits;
    auto gap = [&](double u) {
        return effective_bandwidth(profile, QosExponent(u), params) - effcap_at(u);
    };

    double lo = 1e-12 * inv_l;
    double hi = (1.0 - 1e-9) * inv_l;
    double g_lo = gap(lo);
    if (g_lo >= 0.0)
        throw stability_infeasible(
            "balance_qos_exponent: arrival rate exceeds service capacity");
    double g_hi = gap(hi);
    if (g_hi <= 0.0)
        throw stability_infeasible(
            "balance_qos_exponent: no sign change in the exponent bracket");

    // Bisect until the exponent bracket closes and the residual is small
    // relative to the effective bandwidth at the root.
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double g_mid = gap(mid);
        if (g_mid > 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-10) {
            const double residual = std::fabs(gap(mid));
            const double scale = effective_bandwidth(profile, QosExponent(mid), params);
            if (residual <= 1e-6 * scale) break;
        }
    }
    return QosExponent(mid);
}

} // namespace nomaee
