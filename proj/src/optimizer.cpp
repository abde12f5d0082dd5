#include "nomaee/optimizer.hpp"

#include <cmath>
#include <sstream>

#include "nomaee/errors.hpp"

namespace nomaee {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section maximization of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol) {
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    if (std::isnan(f1) || std::isnan(f2))
        throw numeric_error("line search: objective returned NaN");
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

struct InnerOutcome {
    std::vector<double> power;
    std::vector<double> loop_multipliers;  // raw dual-loop state
    std::vector<double> kkt_multipliers;   // complementary-slackness consistent
    int dual_iterations = 0;
    double dual_residual = 0.0;            // max |lambda * (P - Pmax)| of the loop
};

class InnerSolver {
public:
    InnerSolver(double q, const Scenario& scen, const OptimizerOptions& opt)
        : q_(q), scen_(scen), opt_(opt), ptx_(scen.tx_probs()) {
        const std::size_t n = scen.user_count();
        u_.reserve(n);
        w_.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            u_.push_back(scen.qos[k].u_star.value);
            w_.push_back(scen.energy.mode == CircuitryMode::two_mode ? ptx_[k] : 1.0);
        }
    }

    double alpha(std::size_t k, std::span<const double> power) const {
        return detail::effcap_k_user_core<double>(k, power, scen_.chi, ptx_, u_[k],
                                                  scen_.params, opt_.effcap);
    }

    double capacity_gradient(std::size_t k, const std::vector<double>& power) const {
        // d/dP_k of the capacity sum touches users decoded at or before k.
        EffCapOptions tight = opt_.effcap;
        tight.quad.rel_tol = std::min(tight.quad.rel_tol, 1e-12);
        const double pmax = scen_.params.peak_power_w;
        const double step = 1e-5 * std::max(power[k], 1e-6 * pmax);
        auto prefix = [&](double pk) {
            std::vector<double> p = power;
            p[k] = pk;
            double sum = 0.0;
            for (std::size_t j = 0; j <= k; ++j)
                sum += detail::effcap_k_user_core<double>(j, p, scen_.chi, ptx_, u_[j],
                                                          scen_.params, tight);
            return sum;
        };
        return (prefix(power[k] + step) - prefix(power[k] - step)) / (2.0 * step);
    }

    InnerOutcome solve(const std::vector<double>* warm_start) const {
        const std::size_t n = scen_.user_count();
        const double pmax = scen_.params.peak_power_w;
        std::vector<double> power =
            warm_start ? *warm_start : std::vector<double>(n, 0.5 * pmax);
        std::vector<double> lambda(n, 0.0);
        std::vector<double> alphas(n);
        for (std::size_t k = 0; k < n; ++k) alphas[k] = alpha(k, power);

        const double sgn = opt_.flip_subgradient_sign ? -1.0 : 1.0;
        InnerOutcome out;
        for (int j = 1; j <= opt_.dual_max_iter; ++j) {
            out.dual_iterations = j;
            const std::vector<double> before = power;
            sweep_to_convergence(power, alphas, lambda, sgn);
            if (j >= 2) {
                double move = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    move = std::max(move, std::fabs(power[k] - before[k]));
                if (move < opt_.power_rel_tol * pmax) break;
            }
            PowerAllocation tmp{power};
            lambda = subgradient_step(lambda, tmp, j, scen_.params, opt_);
        }

        out.dual_residual = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            out.dual_residual =
                std::max(out.dual_residual, std::fabs(lambda[k] * (power[k] - pmax)));

        // KKT-consistent multipliers: zero off the bound, shadow price on it.
        out.kkt_multipliers.assign(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            if (power[k] >= pmax * (1.0 - 1e-9)) {
                power[k] = pmax;
                const double grad = capacity_gradient(k, power);
                out.kkt_multipliers[k] = std::max(0.0, grad - q_ * w_[k]);
            }
        }
        out.loop_multipliers = std::move(lambda);
        out.power = std::move(power);
        return out;
    }

    double objective(const std::vector<double>& power) const {
        double value = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k) {
            value += alpha(k, power);
            value -= q_ * (scen_.users[k].circuit_power_w + w_[k] * power[k]);
        }
        return value;
    }

    double power_cost(const std::vector<double>& power) const {
        double total = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k)
            total += scen_.users[k].circuit_power_w + w_[k] * power[k];
        return total;
    }

    double capacity(const std::vector<double>& power) const {
        double total = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k) total += alpha(k, power);
        return total;
    }

private:
    void sweep_to_convergence(std::vector<double>& power, std::vector<double>& alphas,
                              const std::vector<double>& lambda, double sgn) const {
        const std::size_t n = power.size();
        const double pmax = scen_.params.peak_power_w;
        const double tol = opt_.golden_rel_tol * pmax;
        const int max_sweeps = 200;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double max_move = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                // Only users decoded at or before k see P_k; drop constants.
                std::vector<double> trial = power;
                auto g = [&](double pk) {
                    trial[k] = pk;
                    double val = 0.0;
                    for (std::size_t j = 0; j <= k; ++j) val += alpha(j, trial);
                    val -= q_ * w_[k] * pk;
                    val += sgn * lambda[k] * pk;
                    return val;
                };
                double best = golden_max(g, 0.0, pmax, tol);
                if (g(0.0) >= g(best)) best = 0.0;  // prefer the smallest power
                max_move = std::max(max_move, std::fabs(best - power[k]));
                power[k] = best;
                trial[k] = best;
                for (std::size_t j = 0; j <= k; ++j) alphas[j] = alpha(j, trial);
            }
            if (max_move < opt_.power_rel_tol * pmax) return;
        }
    }

    double q_;
    const Scenario& scen_;
    const OptimizerOptions& opt_;
    std::vector<double> ptx_;
    std::vector<double> u_;
    std::vector<double> w_;
};

} // namespace

PowerAllocation inner_maximize(double q, const Scenario& scenario,
                               const OptimizerOptions& opt,
                               std::vector<double>* multipliers_out,
                               int* dual_iterations_out,
                               const std::vector<double>* warm_start) {
    if (!(q >= 0.0)) throw invalid_parameter("inner_maximize: q must be non-negative");
    InnerSolver solver(q, scenario, opt);
    InnerOutcome out = solver.solve(warm_start);
    if (multipliers_out) *multipliers_out = out.kkt_multipliers;
    if (dual_iterations_out) *dual_iterations_out = out.dual_iterations;
    return PowerAllocation{std::move(out.power)};
}

OptimalAllocation dinkelbach_solve(const Scenario& scenario, const OptimizerOptions& opt) {
    DinkelbachTrace trace;
    double q = 0.0;
    std::vector<double> power;
    std::vector<double> kkt_multipliers;
    double final_capacity = 0.0;
    double final_power_cost = 0.0;
    bool converged = false;

    for (int it = 0; it < opt.dinkelbach_max_iter; ++it) {
        InnerSolver solver(q, scenario, opt);
        InnerOutcome out = solver.solve(power.empty() ? nullptr : &power);
        const double capacity = solver.capacity(out.power);
        const double cost = solver.power_cost(out.power);
        const double f_value = capacity - q * cost;

        DinkelbachIteration step;
        step.q = q;
        step.f_value = f_value;
        step.tx_power_w = out.power;
        step.dual_residual = out.dual_residual;
        step.dual_iterations = out.dual_iterations;
        trace.iterations.push_back(step);

        power = std::move(out.power);
        kkt_multipliers = std::move(out.kkt_multipliers);
        final_capacity = capacity;
        final_power_cost = cost;

        if (std::fabs(f_value) <= opt.dinkelbach_rel_tol * cost) {
            converged = true;
            break;
        }
        q = capacity / cost;
    }
    trace.converged = converged;
    if (!converged) {
        std::ostringstream msg;
        msg << "dinkelbach_solve: no convergence in " << opt.dinkelbach_max_iter
            << " iterations";
        throw convergence_failure(msg.str(), trace);
    }

    OptimalAllocation result;
    result.alloc = PowerAllocation{power};
    result.qos = scenario.qos;
    result.eta = final_capacity / final_power_cost;
    result.multipliers = kkt_multipliers;
    result.trace = std::move(trace);
    const KktReport kkt =
        kkt_residual(result.alloc, result.eta, result.multipliers, scenario, opt);
    result.kkt_residuals = kkt.stationarity;
    return result;
}

KktReport kkt_residual(const PowerAllocation& alloc, double q,
                       const std::vector<double>& multipliers,
                       const Scenario& scenario, const OptimizerOptions& opt) {
    const std::size_t n = scenario.user_count();
    if (alloc.tx_power_w.size() != n || multipliers.size() != n)
        throw invalid_parameter("kkt_residual: vector length mismatch");
    InnerSolver solver(q, scenario, opt);
    const double pmax = scenario.params.peak_power_w;

    KktReport report;
    report.stationarity.resize(n);
    report.slackness_gap.resize(n);
    report.scale.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double grad = solver.capacity_gradient(k, alloc.tx_power_w);
        const double w = scenario.energy.mode == CircuitryMode::two_mode
                             ? scenario.qos[k].tx_prob
                             : 1.0;
        report.stationarity[k] = std::fabs(grad - q * w - multipliers[k]);
        report.slackness_gap[k] = multipliers[k] * (alloc.tx_power_w[k] - pmax);
        report.scale[k] = q * w;
    }
    return report;
}

double closed_form_power(double gamma_k, double q, double p_k, double lambda_k,
                         const SystemParams& params, bool* unbounded) {
    if (unbounded) *unbounded = false;
    if (!(gamma_k >= 0.0))
        throw invalid_parameter("closed_form_power: SINR must be non-negative");
    const double denom = q * p_k - lambda_k;
    if (denom <= 0.0) {
        if (unbounded) *unbounded = true;
        return params.peak_power_w;
    }
    if (gamma_k == 0.0) return 0.0;
    const double p = params.bandwidth_hz * gamma_k /
                     (std::log(2.0) * (1.0 + gamma_k) * denom);
    return std::clamp(p, 0.0, params.peak_power_w);
}

std::vector<double> subgradient_step(const std::vector<double>& lambdas,
                                     const PowerAllocation& alloc, int iteration,
                                     const SystemParams& params,
                                     const OptimizerOptions& opt) {
    if (iteration < 1)
        throw invalid_parameter("subgradient_step: iteration index starts at 1");
    if (lambdas.size() != alloc.tx_power_w.size())
        throw invalid_parameter("subgradient_step: vector length mismatch");
    const double step = opt.subgradient_step0 / std::sqrt(static_cast<double>(iteration));
    std::vector<double> next(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double slack = params.peak_power_w - alloc.tx_power_w[k];
        const double direction = opt.flip_subgradient_sign ? -slack : slack;
        next[k] = std::max(0.0, lambdas[k] + step * direction);
    }
    return next;
}

std::vector<std::pair<double, double>> ee_vs_exponent_curve(
    const Scenario& scenario, const std::vector<double>& u_scales,
    const OptimizerOptions& opt) {
    if (u_scales.empty())
        throw invalid_parameter("ee_vs_exponent_curve: empty exponent grid");
    for (std::size_t i = 1; i < u_scales.size(); ++i)
        if (!(u_scales[i] > u_scales[i - 1]))
            throw invalid_parameter("ee_vs_exponent_curve: grid must be increasing");

    std::vector<std::pair<double, double>> curve;
    curve.reserve(u_scales.size());
    for (double scale : u_scales) {
        const Scenario scaled = scenario.with_scaled_exponents(scale);
        const OptimalAllocation best = dinkelbach_solve(scaled, opt);
        curve.emplace_back(scale, best.eta);
    }
    return curve;
}

} // namespace nomaee
