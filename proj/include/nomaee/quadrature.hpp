#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "nomaee/errors.hpp"

namespace nomaee {

struct QuadratureControl {
    double rel_tol = 1e-8;
    int max_subintervals = 1024;  // hard cap on the bisection tree
};

template <class Real>
struct QuadratureResult {
    Real value = 0;
    Real error_estimate = 0;
    int subintervals = 0;
    bool converged = false;
};

namespace detail {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1], by Newton
// iteration on the Legendre recurrence.
template <class Real>
struct GaussLegendreRule {
    std::vector<Real> x;
    std::vector<Real> w;

    explicit GaussLegendreRule(int n) : x(n), w(n) {
        const long double eps = 1e-17L;
        const int m = (n + 1) / 2;
        for (int i = 1; i <= m; ++i) {
            long double z = std::cos(3.14159265358979323846L * (i - 0.25L) / (n + 0.5L));
            long double pp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p1 = 1, p2 = 0;
                for (int j = 1; j <= n; ++j) {
                    long double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / j;
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0L);
                long double z1 = z;
                z = z1 - p1 / pp;
                if (std::fabs(z - z1) <= eps) break;
            }
            x[i - 1] = static_cast<Real>(-z);
            x[n - i] = static_cast<Real>(z);
            w[i - 1] = w[n - i] = static_cast<Real>(2.0L / ((1.0L - z * z) * pp * pp));
        }
    }
};

template <class Real>
const GaussLegendreRule<Real>& gl64() {
    static const GaussLegendreRule<Real> rule(64);
    return rule;
}

template <class Real, class F>
Real gl64_panel(F&& f, Real a, Real b) {
    const auto& rule = gl64<Real>();
    const Real mid = (a + b) / 2;
    const Real half = (b - a) / 2;
    Real sum = 0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        sum += rule.w[i] * f(mid + half * rule.x[i]);
    return sum * half;
}

} // namespace detail

// Globally adaptive Gauss-Legendre integration: 64-node panels refined by
// interval bisection until the summed panel-error estimate drops below
// rel_tol of the running total. `seeds` pre-splits the interval where the
// integrand is known to have sharp features (boundary layers).
template <class Real, class F>
QuadratureResult<Real> adaptive_integrate(F&& f, Real a, Real b,
                                          const QuadratureControl& ctl,
                                          std::vector<Real> seeds = {}) {
    struct Segment {
        Real a, b, value, error;
    };
    struct WorstFirst {
        bool operator()(const Segment& s1, const Segment& s2) const {
            if (s1.error != s2.error) return s1.error < s2.error;
            return s1.a < s2.a;  // deterministic tie-break
        }
    };

    auto make_segment = [&](Real lo, Real hi, Real whole) {
        if (std::isnan(whole)) whole = detail::gl64_panel<Real>(f, lo, hi);
        const Real mid = (lo + hi) / 2;
        const Real left = detail::gl64_panel<Real>(f, lo, mid);
        const Real right = detail::gl64_panel<Real>(f, mid, hi);
        const Real refined = left + right;
        using std::fabs;
        return Segment{lo, hi, refined, fabs(whole - refined)};
    };

    seeds.push_back(a);
    seeds.push_back(b);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                               [&](Real t) { return t < a || t > b; }),
                seeds.end());

    std::priority_queue<Segment, std::vector<Segment>, WorstFirst> queue;
    Real total = 0, total_err = 0;
    int count = 0;
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
        Segment s = make_segment(seeds[i], seeds[i + 1], nan);
        total += s.value;
        total_err += s.error;
        ++count;
        queue.push(s);
    }

    using std::fabs;
    const Real floor_abs = std::numeric_limits<Real>::min() * 1024;
    while (total_err > ctl.rel_tol * std::max(fabs(total), floor_abs) &&
           count < ctl.max_subintervals && !queue.empty()) {
        Segment worst = queue.top();
        queue.pop();
        const Real mid = (worst.a + worst.b) / 2;
        if (mid <= worst.a || mid >= worst.b) continue;  // interval exhausted
        Segment l = make_segment(worst.a, mid, nan);
        Segment r = make_segment(mid, worst.b, nan);
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        ++count;
        queue.push(l);
        queue.push(r);
    }

    QuadratureResult<Real> res;
    res.value = total;
    res.error_estimate = total_err;
    res.subintervals = count;
    res.converged = total_err <= ctl.rel_tol * std::max(fabs(total), floor_abs);
    return res;
}

} // namespace nomaee
