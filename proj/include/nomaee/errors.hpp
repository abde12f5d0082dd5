#pragma once

#include <stdexcept>
#include <string>

namespace nomaee {

// Bad argument value or violated type invariant.
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// Delay bound below one slot duration: no exponent can meet it.
class infeasible_delay : public std::domain_error {
public:
    explicit infeasible_delay(const std::string& msg) : std::domain_error(msg) {}
};

// Moment generating function of the arrival diverges (u*L >= 1).
class divergent_moment : public std::domain_error {
public:
    explicit divergent_moment(const std::string& msg) : std::domain_error(msg) {}
};

// Quadrature or other numeric machinery failed to converge / produced NaN.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Capacity evaluation left the formula's domain (log of non-positive value).
class formula_domain_error : public numeric_error {
public:
    explicit formula_domain_error(const std::string& msg) : numeric_error(msg) {}
};

// Mean arrival rate exceeds service capacity: no balance exponent exists.
class stability_infeasible : public std::runtime_error {
public:
    explicit stability_infeasible(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested statistic is undefined (no samples, zero energy, ...).
class invalid_statistic : public std::runtime_error {
public:
    explicit invalid_statistic(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file could not be parsed; message carries file:line context.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nomaee
