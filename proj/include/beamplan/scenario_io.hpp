// Scenario files: JSON documents whose keys carry their unit explicitly
// (tx_power_dbm, isd_m, speed_kmh, ...). Values convert to SI at ingest and
// back to external units on emission. Unknown keys are rejected rather than
// ignored so that typos cannot silently fall back to defaults. A "preset"
// key seeds the document from a bundled deployment; remaining keys override
// individual fields.
#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "beamplan/scenario.hpp"
#include "beamplan/units.hpp"

namespace beamplan {

struct ScenarioFile {
    Scenario scenario;
    MobilityProfile mobility;
    std::optional<std::string> preset_name;
};

inline ScenarioFile parse_scenario_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("scenario document must be a JSON object");

    ScenarioFile out;
    if (doc.contains("preset")) {
        Preset p = preset(doc.at("preset").get<std::string>());
        out.scenario = p.scenario;
        out.mobility = p.mobility;
        out.preset_name = p.name;
    }

    auto number = [&](const nlohmann::json& v, const std::string& key) -> double {
        if (!v.is_number())
            throw std::invalid_argument("scenario key '" + key + "' must be a number");
        return v.get<double>();
    };

    bool saw_isd = false, saw_intensity = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "preset") {
            continue;
        } else if (key == "carrier_frequency_ghz") {
            out.scenario.carrier_frequency_hz = ghz_to_hz(number(value, key));
        } else if (key == "bandwidth_mhz") {
            out.scenario.bandwidth_hz = mhz_to_hz(number(value, key));
        } else if (key == "noise_density_dbm_per_hz") {
            out.scenario.noise_density_w_per_hz = dbm_to_watt(number(value, key));
        } else if (key == "tx_power_dbm") {
            out.scenario.tx_power_w = dbm_to_watt(number(value, key));
        } else if (key == "isd_m") {
            out.scenario.bs_intensity_per_m2 = isd_to_intensity(number(value, key));
            saw_isd = true;
        } else if (key == "bs_intensity_per_km2") {
            out.scenario.bs_intensity_per_m2 = per_km2_to_per_m2(number(value, key));
            saw_intensity = true;
        } else if (key == "alpha_los") {
            out.scenario.alpha_los = number(value, key);
        } else if (key == "alpha_nlos") {
            out.scenario.alpha_nlos = number(value, key);
        } else if (key == "los_ball_radius_m") {
            if (value.is_null())
                out.scenario.los_ball_radius_m.reset();
            else
                out.scenario.los_ball_radius_m = number(value, key);
        } else if (key == "sinr_cap_db") {
            out.scenario.sinr_cap_linear = db_to_linear(number(value, key));
        } else if (key == "speed_kmh") {
            out.mobility.speed_mps = kmh_to_mps(number(value, key));
        } else if (key == "ssb_period_ms") {
            out.mobility.ssb_period_s = ms_to_s(number(value, key));
        } else if (key == "beam_reselect_delay_ms") {
            out.mobility.beam_reselect_delay_s = ms_to_s(number(value, key));
        } else if (key == "cell_handover_delay_ms") {
            out.mobility.cell_handover_delay_s = ms_to_s(number(value, key));
        } else if (key == "overhead_mode") {
            out.mobility.overhead_mode = overhead_mode_from_string(value.get<std::string>());
        } else {
            throw std::invalid_argument("unknown scenario key '" + key + "'");
        }
    }
    if (saw_isd && saw_intensity)
        throw std::invalid_argument("give either isd_m or bs_intensity_per_km2, not both");

    validate(out.scenario);
    validate(out.mobility);
    return out;
}

inline ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario_json(doc);
}

inline nlohmann::json scenario_to_json(const Scenario& s, const MobilityProfile& m) {
    nlohmann::json doc;
    doc["carrier_frequency_ghz"] = s.carrier_frequency_hz / 1e9;
    doc["bandwidth_mhz"] = s.bandwidth_hz / 1e6;
    doc["noise_density_dbm_per_hz"] = watt_to_dbm(s.noise_density_w_per_hz);
    doc["tx_power_dbm"] = watt_to_dbm(s.tx_power_w);
    doc["isd_m"] = intensity_to_isd(s.bs_intensity_per_m2);
    doc["alpha_los"] = s.alpha_los;
    doc["alpha_nlos"] = s.alpha_nlos;
    if (s.has_los_ball())
        doc["los_ball_radius_m"] = *s.los_ball_radius_m;
    else
        doc["los_ball_radius_m"] = nullptr;
    doc["sinr_cap_db"] = linear_to_db(s.sinr_cap_linear);
    doc["speed_kmh"] = mps_to_kmh(m.speed_mps);
    doc["ssb_period_ms"] = s_to_ms(m.ssb_period_s);
    doc["beam_reselect_delay_ms"] = s_to_ms(m.beam_reselect_delay_s);
    doc["cell_handover_delay_ms"] = s_to_ms(m.cell_handover_delay_s);
    doc["overhead_mode"] = std::string(to_string(m.overhead_mode));
    return doc;
}

}  // namespace beamplan
