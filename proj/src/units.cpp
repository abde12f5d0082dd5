#include "nomaee/units.hpp"

#include <cmath>

#include "nomaee/errors.hpp"

namespace nomaee {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
    if (watts <= 0.0) throw invalid_parameter("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts) + 30.0;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) {
    if (ratio <= 0.0) throw invalid_parameter("linear_to_db: ratio must be positive");
    return 10.0 * std::log10(ratio);
}

double noise_power_from_density(double n0_dbm_per_hz, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0))
        throw invalid_parameter("noise_power_from_density: bandwidth must be positive");
    return dbm_to_watts(n0_dbm_per_hz) * bandwidth_hz;
}

} // namespace nomaee
