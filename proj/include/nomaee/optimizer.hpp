#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nomaee/scenario.hpp"

namespace nomaee {

struct OptimizerOptions {
    double dinkelbach_rel_tol = 1e-6;  // |F(q)| <= tol * sum(P)
    int dinkelbach_max_iter = 50;
    int dual_max_iter = 500;
    double power_rel_tol = 1e-6;       // sweep convergence, relative to P_max
    double golden_rel_tol = 1e-7;      // line-search bracket, relative to P_max
    double subgradient_step0 = 1e-2;
    // The multiplier update as printed accumulates while the power constraint
    // is slack; the flipped variant is the standard dual ascent. Both are
    // available, the box-constrained line search keeps either sane.
    bool flip_subgradient_sign = false;
    EffCapOptions effcap{};
};

struct DinkelbachIteration {
    double q = 0.0;             // bits per joule
    double f_value = 0.0;       // max of numerator - q * denominator
    std::vector<double> tx_power_w;
    double dual_residual = 0.0; // max_k |lambda_k * (P_k - P_max)|
    int dual_iterations = 0;
};

struct DinkelbachTrace {
    std::vector<DinkelbachIteration> iterations;
    bool converged = false;
};

struct OptimalAllocation {
    PowerAllocation alloc;
    std::vector<QosState> qos;
    double eta = 0.0;  // bits per joule
    std::vector<double> multipliers;     // KKT multipliers of the peak-power bound
    std::vector<double> kkt_residuals;   // |stationarity| per user
    DinkelbachTrace trace;
};

// Iterative solver hit its cap; carries the trace for diagnosis.
class convergence_failure : public std::runtime_error {
public:
    convergence_failure(const std::string& msg, DinkelbachTrace trace)
        : std::runtime_error(msg), trace(std::move(trace)) {}
    DinkelbachTrace trace;
};

// Maximize sum effective capacity minus q * total power over the power box,
// by cyclic per-user golden-section line search under dual multipliers.
PowerAllocation inner_maximize(double q, const Scenario& scenario,
                               const OptimizerOptions& opt = {},
                               std::vector<double>* multipliers_out = nullptr,
                               int* dual_iterations_out = nullptr,
                               const std::vector<double>* warm_start = nullptr);

// Dinkelbach outer loop on the energy-efficiency ratio.
OptimalAllocation dinkelbach_solve(const Scenario& scenario,
                                   const OptimizerOptions& opt = {});

// Stationarity residual |d/dP_k (sum effcap) - q*w_k -/+ lambda_k| per user,
// with the capacity derivative taken by central finite differences through
// the quadrature (relative step 1e-5), plus the complementary-slackness gap.
struct KktReport {
    std::vector<double> stationarity;       // |dL/dP_k|
    std::vector<double> slackness_gap;      // lambda_k * (P_k - P_max)
    std::vector<double> scale;              // q * w_k, the natural magnitude
};
KktReport kkt_residual(const PowerAllocation& alloc, double q,
                       const std::vector<double>& multipliers,
                       const Scenario& scenario,
                       const OptimizerOptions& opt = {});

// Fixed-point diagnostic from the stationarity condition:
// [B*gamma / (ln2 * (1+gamma) * (q*p - lambda))]+ clipped to [0, P_max].
// Sets *unbounded when q*p <= lambda (returns P_max).
double closed_form_power(double gamma_k, double q, double p_k, double lambda_k,
                         const SystemParams& params, bool* unbounded = nullptr);

// One projected subgradient update of the peak-power multipliers.
std::vector<double> subgradient_step(const std::vector<double>& lambdas,
                                     const PowerAllocation& alloc, int iteration,
                                     const SystemParams& params,
                                     const OptimizerOptions& opt = {});

// Optimized energy efficiency at each scaled exponent vector.
std::vector<std::pair<double, double>> ee_vs_exponent_curve(
    const Scenario& scenario, const std::vector<double>& u_scales,
    const OptimizerOptions& opt = {});

} // namespace nomaee
