// Unit conversions between the external config/report units (dBm, dB, km/h,
// ms, km^-2) and the SI units used by every internal computation (W, Hz, m,
// s, linear ratios). Nothing outside this file converts units.
#pragma once

#include <cmath>

namespace beamplan {

inline constexpr double speed_of_light_mps = 299'792'458.0;
inline constexpr double pi = 3.14159265358979323846;

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double kmh_to_mps(double kmh) { return kmh / 3.6; }
inline double mps_to_kmh(double mps) { return mps * 3.6; }

inline double ms_to_s(double ms) { return ms / 1e3; }
inline double s_to_ms(double s) { return s * 1e3; }

inline double ghz_to_hz(double ghz) { return ghz * 1e9; }
inline double mhz_to_hz(double mhz) { return mhz * 1e6; }

// BS density: 1 km^-2 = 1e-6 m^-2; area spectral efficiency: 1 m^-2 = 1e6 km^-2.
inline double per_km2_to_per_m2(double per_km2) { return per_km2 / 1e6; }
inline double per_m2_to_per_km2(double per_m2) { return per_m2 * 1e6; }

}  // namespace beamplan
