#include "nomaee/effcap.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nomaee/errors.hpp"

namespace nomaee {

QosExponent::QosExponent(double u) : value(u) {
    if (!(std::isfinite(u) && u > 0.0))
        throw invalid_parameter("QosExponent: exponent must be positive and finite");
}

void EffCapQuery::validate() const {
    params.validate();
    const std::size_t n = alloc.tx_power_w.size();
    if (n == 0) throw invalid_parameter("effcap: empty allocation");
    if (profiles.size() != n || tx_probs.size() != n)
        throw invalid_parameter("effcap: inconsistent vector lengths");
    if (user_index >= n) throw invalid_parameter("effcap: user index out of range");
    alloc.validate(params);
    for (double p : tx_probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw invalid_parameter("effcap: tx probability outside [0, 1]");
}

double effective_bandwidth(const UserProfile& profile, QosExponent u,
                           const SystemParams& params) {
    const double ul = u.value * profile.mean_burst_bits;
    if (ul >= 1.0)
        throw divergent_moment("effective_bandwidth: u*L >= 1, arrival moment diverges");
    const double p = profile.arrival_prob;
    return std::log(p / (1.0 - ul) + 1.0 - p) / (u.value * params.slot_duration_s);
}

namespace detail {

template <class Real>
Real effcap_k_user_core(std::size_t k, std::span<const double> tx_power_w,
                        std::span<const double> chi,
                        std::span<const double> tx_probs, double u,
                        const SystemParams& params, const EffCapOptions& opt,
                        bool* clamped) {
    if (clamped) *clamped = false;
    const std::size_t n = tx_power_w.size();
    if (tx_power_w[k] <= 0.0) return Real(0);

    const Real sig2 = static_cast<Real>(params.noise_power_w);
    const Real ts = static_cast<Real>(params.slot_duration_s);
    const Real bw = static_cast<Real>(params.bandwidth_hz);
    const Real uu = static_cast<Real>(u);

    // Mean received power per user; the own-gain scale of the substitution.
    const Real v_own = static_cast<Real>(tx_power_w[k]) / static_cast<Real>(chi[k]);

    // Interferers decoded after k with positive power and activity.
    std::vector<Real> vi, pi;
    vi.reserve(n - k);
    pi.reserve(n - k);
    for (std::size_t i = k + 1; i < n; ++i) {
        if (tx_power_w[i] > 0.0 && tx_probs[i] > 0.0) {
            vi.push_back(static_cast<Real>(tx_power_w[i]) / static_cast<Real>(chi[i]));
            pi.push_back(static_cast<Real>(tx_probs[i]));
        }
    }

    Real v_scale = v_own;
    if (opt.substitution_uses_interferer_power && !vi.empty()) v_scale = vi.back();

    const Real a = std::log(Real(2)) / (uu * bw * ts);  // s(t) = r*(t^-a - 1)
    const Real r = sig2 / v_scale;

    // Complement form: E[e^{-uS}] = integral over (0,1] of
    //   1 - e^{-s(t)} * prod_i [(1-p_i) + p_i*sig2/(sig2 + s(t) v_i)],
    // evaluated through expm1/log1p so both E ~ 1 and E ~ 0 stay accurate.
    auto integrand = [&](Real t) -> Real {
        if (!(t > Real(0))) return Real(1);
        const Real e = -a * std::log(t);
        Real s;
        if (e > Real(700))
            s = std::numeric_limits<Real>::infinity();
        else
            s = r * std::expm1(e);
        Real x = -s;
        for (std::size_t i = 0; i < vi.size(); ++i) {
            const Real sv = s * vi[i];
            const Real ratio = std::isinf(sv) ? Real(1) : sv / (sig2 + sv);
            x += std::log1p(-pi[i] * ratio);
        }
        if (std::isnan(x)) return Real(1);
        return -std::expm1(x);
    };

    // Pre-split at the own-gain boundary layer and at every interferer's
    // attenuation knee so the bisection starts near the action.
    std::vector<Real> seeds;
    auto seed_at_s = [&](Real s_level) {
        if (!(s_level > Real(0))) return;
        const Real t = std::exp(-std::log1p(s_level / r) / a);
        if (t > Real(0) && t < Real(1)) seeds.push_back(t);
    };
    for (double s : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 2.0, 8.0, 25.0, 60.0})
        seed_at_s(static_cast<Real>(s));
    for (Real v : vi)
        for (double m : {0.1, 1.0, 10.0})
            seed_at_s(static_cast<Real>(m) * sig2 / v);

    const auto res = adaptive_integrate<Real>(integrand, Real(0), Real(1), opt.quad,
                                              std::move(seeds));
    if (!res.converged) {
        std::ostringstream msg;
        msg << "effcap quadrature did not converge: user " << k << ", value "
            << static_cast<double>(res.value) << ", error estimate "
            << static_cast<double>(res.error_estimate) << ", subintervals "
            << res.subintervals;
        throw numeric_error(msg.str());
    }

    Real log_arg = res.value;  // E[e^{-uS}]
    if (std::isnan(log_arg) || log_arg <= Real(0))
        throw formula_domain_error("effcap: log argument non-positive");
    if (log_arg > Real(1)) log_arg = Real(1);
    if (log_arg < Real(1e-300)) {
        log_arg = Real(1e-300);
        if (clamped) *clamped = true;
    }
    return -std::log(log_arg) / (uu * ts);
}

template double effcap_k_user_core<double>(std::size_t, std::span<const double>,
                                           std::span<const double>,
                                           std::span<const double>, double,
                                           const SystemParams&, const EffCapOptions&,
                                           bool*);
template long double effcap_k_user_core<long double>(
    std::size_t, std::span<const double>, std::span<const double>,
    std::span<const double>, double, const SystemParams&, const EffCapOptions&,
    bool*);

namespace {

// MGF pieces of the two-user forms after substituting z = sig2*x/v1 (so the
// exponential marginal becomes e^-z): the rate factor is (1+rho1*z)^-c.
template <class F>
double decaying_integral(F&& weight, double rho1, double c, double other_rho,
                         const QuadratureControl& quad) {
    // Map z = w/(1-w) onto [0,1).
    auto f = [&](double w) -> double {
        if (w >= 1.0) return 0.0;
        const double z = w / (1.0 - w);
        if (z > 745.0) return 0.0;
        const double jac = 1.0 / ((1.0 - w) * (1.0 - w));
        const double rate = std::exp(-c * std::log1p(rho1 * z));
        return rate * std::exp(-z) * weight(z) * jac;
    };
    std::vector<double> seeds;
    auto seed_at_z = [&](double z) {
        if (z > 0.0) seeds.push_back(z / (1.0 + z));
    };
    for (double z : {0.125, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) seed_at_z(z);
    for (double rho : {rho1, other_rho})
        if (rho > 0.0)
            for (double m : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e4}) seed_at_z(m / rho);
    const auto res = adaptive_integrate<double>(f, 0.0, 1.0, quad, std::move(seeds));
    if (!res.converged) {
        std::ostringstream msg;
        msg << "two-user quadrature did not converge: value " << res.value
            << ", error estimate " << res.error_estimate << ", subintervals "
            << res.subintervals;
        throw numeric_error(msg.str());
    }
    return res.value;
}

double finish_effcap(double mgf, double u, double ts) {
    if (std::isnan(mgf) || mgf <= 0.0)
        throw formula_domain_error("effcap: log argument non-positive");
    if (mgf > 1.0) mgf = 1.0;
    if (mgf < 1e-300) mgf = 1e-300;
    return -std::log(mgf) / (u * ts);
}

} // namespace

} // namespace detail

double effcap_two_user_first(const PowerAllocation& alloc, double tx_prob_second,
                             QosExponent u, const SystemParams& params,
                             const std::vector<UserProfile>& profiles,
                             const EffCapOptions& opt) {
    if (alloc.tx_power_w.size() != 2 || profiles.size() != 2)
        throw invalid_parameter("effcap_two_user_first: needs exactly two users");
    if (!(tx_prob_second >= 0.0 && tx_prob_second <= 1.0))
        throw invalid_parameter("effcap_two_user_first: tx probability outside [0, 1]");
    if (alloc.tx_power_w[0] <= 0.0) return 0.0;

    const double sig2 = params.noise_power_w;
    const double v1 = alloc.tx_power_w[0] / channel_rate_param(profiles[0]);
    const double v2 = alloc.tx_power_w[1] / channel_rate_param(profiles[1]);
    const double rho1 = v1 / sig2;
    const double rho2 = v2 / sig2;
    const double c = u.value * params.slot_duration_s * params.bandwidth_hz / std::log(2.0);

    const double sleep = detail::decaying_integral([](double) { return 1.0; }, rho1, c,
                                                   0.0, opt.quad);
    double mgf = sleep;
    if (tx_prob_second > 0.0 && alloc.tx_power_w[1] > 0.0) {
        auto w2 = [&](double z) {
            const double d = 1.0 + rho2 * z;
            return 1.0 / d + rho2 / (d * d);
        };
        const double active = detail::decaying_integral(w2, rho1, c, rho2, opt.quad);
        mgf = tx_prob_second * active + (1.0 - tx_prob_second) * sleep;
    }
    return detail::finish_effcap(mgf, u.value, params.slot_duration_s);
}

double effcap_two_user_second(const PowerAllocation& alloc, QosExponent u,
                              const SystemParams& params,
                              const std::vector<UserProfile>& profiles,
                              const EffCapOptions& opt) {
    if (alloc.tx_power_w.size() != 2 || profiles.size() != 2)
        throw invalid_parameter("effcap_two_user_second: needs exactly two users");
    if (alloc.tx_power_w[1] <= 0.0) return 0.0;

    const double v2 = alloc.tx_power_w[1] / channel_rate_param(profiles[1]);
    const double rho2 = v2 / params.noise_power_w;
    const double c = u.value * params.slot_duration_s * params.bandwidth_hz / std::log(2.0);
    const double mgf = detail::decaying_integral([](double) { return 1.0; }, rho2, c,
                                                 0.0, opt.quad);
    return detail::finish_effcap(mgf, u.value, params.slot_duration_s);
}

namespace {

std::vector<double> rate_params(const std::vector<UserProfile>& profiles) {
    std::vector<double> chi;
    chi.reserve(profiles.size());
    for (const auto& p : profiles) chi.push_back(channel_rate_param(p));
    return chi;
}

} // namespace

double effcap_k_user(const EffCapQuery& query, const EffCapOptions& opt, bool* clamped) {
    query.validate();
    const auto chi = rate_params(query.profiles);
    return detail::effcap_k_user_core<double>(query.user_index, query.alloc.tx_power_w,
                                              chi, query.tx_probs, query.u.value,
                                              query.params, opt, clamped);
}

long double effcap_k_user_precise(const EffCapQuery& query, const EffCapOptions& opt) {
    query.validate();
    const auto chi = rate_params(query.profiles);
    return detail::effcap_k_user_core<long double>(query.user_index,
                                                   query.alloc.tx_power_w, chi,
                                                   query.tx_probs, query.u.value,
                                                   query.params, opt, nullptr);
}

MonteCarloEstimate effcap_monte_carlo(const EffCapQuery& query, std::size_t n_samples,
                                      CounterRng& rng, const MonteCarloOptions& opt) {
    query.validate();
    if (n_samples < 10000)
        throw invalid_parameter("effcap_monte_carlo: needs at least 1e4 samples");
    if (opt.deterministic_gains &&
        opt.deterministic_gains->size() != query.profiles.size())
        throw invalid_parameter("effcap_monte_carlo: fixed gain vector length mismatch");

    const std::size_t k = query.user_index;
    const std::size_t n = query.profiles.size();
    const auto chi = rate_params(query.profiles);
    const double sig2 = query.params.noise_power_w;
    const double bt = query.params.bandwidth_hz * query.params.slot_duration_s;
    const double u = query.u.value;

    // Streaming log-sum-exp accumulation of Z = e^{-uS} and Z^2 keeps the
    // estimator usable when uS is large enough for Z^2 to underflow.
    double max_x = -std::numeric_limits<double>::infinity();
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t it = 0; it < n_samples; ++it) {
        const double g_own = opt.deterministic_gains
                                 ? (*opt.deterministic_gains)[k]
                                 : rng.next_exponential(1.0 / chi[k]);
        double interference = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (query.tx_probs[i] <= 0.0 || query.alloc.tx_power_w[i] <= 0.0) continue;
            if (!rng.next_bernoulli(query.tx_probs[i])) continue;
            const double g = opt.deterministic_gains
                                 ? (*opt.deterministic_gains)[i]
                                 : rng.next_exponential(1.0 / chi[i]);
            interference += query.alloc.tx_power_w[i] * g;
        }
        const double gamma = query.alloc.tx_power_w[k] * g_own / (interference + sig2);
        const double x = -u * bt * std::log2(1.0 + gamma);
        if (x > max_x) {
            const double scale = std::exp(max_x - x);
            s1 *= scale;
            s2 *= scale * scale;
            max_x = x;
        }
        s1 += std::exp(x - max_x);
        s2 += std::exp(2.0 * (x - max_x));
    }

    const double nn = static_cast<double>(n_samples);
    const double log_mean = max_x + std::log(s1 / nn);
    const double uts = u * query.params.slot_duration_s;

    MonteCarloEstimate est;
    est.value = -log_mean / uts;
    double rel_var = nn * s2 / (s1 * s1) - 1.0;  // Var(Z)/E[Z]^2 estimate
    if (rel_var < 0.0) rel_var = 0.0;
    est.std_error = std::sqrt(rel_var / nn) / uts;
    return est;
}

double sum_effective_capacity(const PowerAllocation& alloc,
                              const std::vector<QosExponent>& qos,
                              const std::vector<double>& tx_probs,
                              const SystemParams& params,
                              const std::vector<UserProfile>& profiles,
                              const EffCapOptions& opt) {
    const std::size_t n = alloc.tx_power_w.size();
    if (qos.size() != n || tx_probs.size() != n || profiles.size() != n)
        throw invalid_parameter("sum_effective_capacity: inconsistent vector lengths");
    const auto chi = rate_params(profiles);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        sum += detail::effcap_k_user_core<double>(k, alloc.tx_power_w, chi, tx_probs,
                                                  qos[k].value, params, opt, nullptr);
    return sum;
}

} // namespace nomaee
