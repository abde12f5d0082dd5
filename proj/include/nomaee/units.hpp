#pragma once

namespace nomaee {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double ratio);

// Noise power sigma^2 = 10^((N0_dBm/Hz - 30)/10) * B over the given bandwidth.
double noise_power_from_density(double n0_dbm_per_hz, double bandwidth_hz);

} // namespace nomaee
