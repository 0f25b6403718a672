// Deployment scenarios: radio, propagation and density parameters of a
// Poisson cellular downlink, the bundled FR1/FR2 presets, and the
// ISD <-> BS-intensity conversion. All fields are SI.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beamplan/units.hpp"

namespace beamplan {

enum class OverheadMode { Limited, Full, Probabilistic };

inline std::string_view to_string(OverheadMode mode) {
    switch (mode) {
        case OverheadMode::Limited: return "limited";
        case OverheadMode::Full: return "full";
        case OverheadMode::Probabilistic: return "probabilistic";
    }
    return "?";
}

inline OverheadMode overhead_mode_from_string(std::string_view s) {
    if (s == "limited") return OverheadMode::Limited;
    if (s == "full") return OverheadMode::Full;
    if (s == "probabilistic") return OverheadMode::Probabilistic;
    throw std::invalid_argument("unknown overhead mode '" + std::string(s) +
                                "' (expected limited, full or probabilistic)");
}

/// Radio and deployment parameters of one network under study.
/// los_ball_radius_m absent means a single-slope band (sub-6 GHz style):
/// every link uses the NLOS exponent and the two-region coverage split is
/// bypassed entirely.
struct Scenario {
    double carrier_frequency_hz = 28e9;
    double bandwidth_hz = 400e6;
    double noise_density_w_per_hz = dbm_to_watt(-174.0);
    double tx_power_w = dbm_to_watt(36.0);
    double bs_intensity_per_m2 = 4.0 / (pi * 75.0 * 75.0);
    double alpha_los = 1.9;
    double alpha_nlos = 3.5;
    std::optional<double> los_ball_radius_m = 75.0;
    double sinr_cap_linear = 1000.0;  // Q_max

    bool has_los_ball() const { return los_ball_radius_m.has_value(); }

    double noise_power_w() const { return bandwidth_hz * noise_density_w_per_hz; }

    /// Free-space reference attenuation at 1 m, (c / (4 pi f_c))^2.
    double path_loss_constant() const {
        double k = speed_of_light_mps / (4.0 * pi * carrier_frequency_hz);
        return k * k;
    }
};

/// MT motion and the scalar beam-management delays of the deployment.
struct MobilityProfile {
    double speed_mps = kmh_to_mps(30.0);
    double ssb_period_s = ms_to_s(20.0);         // tau
    double beam_reselect_delay_s = ms_to_s(23.0);  // T_b
    double cell_handover_delay_s = ms_to_s(43.0);  // T_c
    OverheadMode overhead_mode = OverheadMode::Limited;
};

/// lambda = 4 / (pi ISD^2), from ISD = 2 r_cell and r_cell = 1/sqrt(pi lambda).
inline double isd_to_intensity(double isd_m) {
    if (!(isd_m > 0.0)) throw std::domain_error("inter-site distance must be > 0");
    return 4.0 / (pi * isd_m * isd_m);
}

inline double intensity_to_isd(double lambda_per_m2) {
    if (!(lambda_per_m2 > 0.0)) throw std::domain_error("BS intensity must be > 0");
    return 2.0 / std::sqrt(pi * lambda_per_m2);
}

/// Hard validation (throws std::invalid_argument) plus soft warnings for
/// path-loss exponents outside the usual measured ranges.
inline std::vector<std::string> validate(const Scenario& s) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!(s.carrier_frequency_hz > 0)) fail("carrier frequency must be > 0");
    if (!(s.bandwidth_hz > 0)) fail("bandwidth must be > 0");
    if (!(s.tx_power_w > 0)) fail("tx power must be > 0");
    if (!(s.noise_density_w_per_hz >= 0)) fail("noise density must be >= 0");
    if (!(s.bs_intensity_per_m2 > 0)) fail("BS intensity must be > 0");
    if (!(s.sinr_cap_linear > 0)) fail("SINR cap must be > 0");
    if (!(s.alpha_nlos > 2.0))
        fail("NLOS path-loss exponent must exceed 2 (interference integral diverges otherwise)");
    if (s.has_los_ball() && !(*s.los_ball_radius_m > 0)) fail("LOS ball radius must be > 0");

    std::vector<std::string> warnings;
    if (s.has_los_ball() && (s.alpha_los < 1.8 || s.alpha_los > 2.5))
        warnings.push_back("alpha_los outside the typical range [1.8, 2.5]");
    if (s.alpha_nlos < 2.5 || s.alpha_nlos > 4.7)
        warnings.push_back("alpha_nlos outside the typical range [2.5, 4.7]");
    return warnings;
}

inline void validate(const MobilityProfile& m) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!(m.speed_mps >= 0)) fail("speed must be >= 0");
    if (!(m.ssb_period_s > 0)) fail("SSB period must be > 0");
    if (!(m.beam_reselect_delay_s >= 0)) fail("beam reselect delay must be >= 0");
    if (!(m.cell_handover_delay_s >= 0)) fail("cell handover delay must be >= 0");
}

struct Preset {
    std::string name;
    Scenario scenario;
    MobilityProfile mobility;
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "FR1-250", "FR1-500", "FR1-1000", "FR2-75", "FR2-125", "FR2-250",
    };
    return names;
}

/// Bundled deployments. FR1 is the sub-6 GHz macro layout (3.5 GHz, 100 MHz,
/// 43 dBm, single slope alpha = 3.5); FR2 the mmWave pico layout (28 GHz,
/// 400 MHz, 36 dBm, LOS ball of 75 m with 1.9/3.5 slopes). The numeric
/// suffix is the average inter-site distance in meters. Both default to a
/// 30 km/h MT, 20 ms SSB period, 23 ms beam and 43 ms cell delays.
inline Preset preset(std::string_view name) {
    Scenario s;
    MobilityProfile m;
    double isd = 0.0;
    if (name == "FR1-250" || name == "FR1-500" || name == "FR1-1000") {
        s.carrier_frequency_hz = 3.5e9;
        s.bandwidth_hz = 100e6;
        s.tx_power_w = dbm_to_watt(43.0);
        s.alpha_los = 3.5;
        s.alpha_nlos = 3.5;
        s.los_ball_radius_m.reset();
        isd = (name == "FR1-250") ? 250.0 : (name == "FR1-500") ? 500.0 : 1000.0;
    } else if (name == "FR2-75" || name == "FR2-125" || name == "FR2-250") {
        s.carrier_frequency_hz = 28e9;
        s.bandwidth_hz = 400e6;
        s.tx_power_w = dbm_to_watt(36.0);
        s.alpha_los = 1.9;
        s.alpha_nlos = 3.5;
        s.los_ball_radius_m = 75.0;
        isd = (name == "FR2-75") ? 75.0 : (name == "FR2-125") ? 125.0 : 250.0;
    } else {
        std::string msg = "unknown preset '" + std::string(name) + "'; valid presets:";
        for (const auto& p : preset_names()) msg += " " + p;
        throw std::invalid_argument(msg);
    }
    s.noise_density_w_per_hz = dbm_to_watt(-174.0);
    s.sinr_cap_linear = db_to_linear(30.0);
    s.bs_intensity_per_m2 = isd_to_intensity(isd);
    return Preset{std::string(name), s, m};
}

}  // namespace beamplan
