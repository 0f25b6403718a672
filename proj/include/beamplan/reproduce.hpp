// Bundled study recipes: each id emits one plot-ready table with the exact
// parameter grid of the corresponding figure in the engine's companion
// studies (deployment comparisons, directional-MT tradeoffs, misalignment
// and overhead sweeps, heterogeneous mixes).
#pragma once

#include "beamplan/sweep.hpp"

namespace beamplan {

inline const std::vector<std::string>& reproduce_ids() {
    static const std::vector<std::string> ids = {
        "fig4a", "fig4b", "fig5", "fig6", "fig7a", "fig7b",
        "fig7c", "fig8a", "fig8b", "fig9", "fig10",
    };
    return ids;
}

namespace detail {

/// Effective-ASE table over (isd, speed, n) for one band preset family.
inline CurveTable ase_isd_speed_grid(const std::string& preset_prefix,
                                     const std::vector<double>& isds_m,
                                     const std::vector<double>& speeds_kmh, int n_max,
                                     const QuadratureSettings& quad) {
    Preset base = preset(preset_prefix + "-" + format_double(isds_m.front()));
    CurveTable table;
    table.columns = {"isd_m", "speed_kmh", "n", "effective_ase_nats_per_s_per_m2",
                     "effective_ase_nats_per_s_per_hz_per_km2"};
    for (double isd : isds_m) {
        Scenario sc = base.scenario;
        sc.bs_intensity_per_m2 = isd_to_intensity(isd);
        for (double v : speeds_kmh) {
            MobilityProfile mob = base.mobility;
            mob.speed_mps = kmh_to_mps(v);
            std::vector<double> values(static_cast<std::size_t>(n_max));
            parallel_for(values.size(), [&](std::size_t i) {
                values[i] = effective_ase(sc, BeamConfig(static_cast<int>(i) + 1, 0), mob,
                                          GainModel::standard(), quad);
            });
            for (int n = 1; n <= n_max; ++n) {
                double ase = values[static_cast<std::size_t>(n - 1)];
                table.rows.push_back({static_cast<double>(isd), v, static_cast<double>(n), ase,
                                      effective_ase_to_report_units(ase, sc.bandwidth_hz)});
            }
        }
    }
    append_standard_metadata(table, base.scenario, base.mobility, quad);
    return table;
}

/// Directional-MT tradeoff at one FR2 density: effective ASE over
/// (k, overhead mode, n), sharing the rate across modes.
inline CurveTable ase_mt_beams_grid(const std::string& preset_name, int n_max,
                                    const QuadratureSettings& quad) {
    Preset p = preset(preset_name);
    CurveTable table;
    table.columns = {"n", "k", "overhead_mode", "effective_ase_nats_per_s_per_m2",
                     "effective_ase_nats_per_s_per_hz_per_km2"};
    const std::vector<int> ks = {0, 1, 2};
    const double lambda = p.scenario.bs_intensity_per_m2;

    std::vector<double> rates(static_cast<std::size_t>(n_max) * ks.size());
    parallel_for(rates.size(), [&](std::size_t i) {
        int n = static_cast<int>(i / ks.size()) + 1;
        int k = ks[i % ks.size()];
        double p_bs = misalignment_prob_bs(n, lambda, p.mobility.speed_mps, p.mobility.ssb_period_s);
        double p_mt = misalignment_prob_mt(k, lambda, p.mobility.speed_mps, p.mobility.ssb_period_s);
        rates[i] = ergodic_rate(p.scenario, BeamConfig(n, k), GainModel::standard(), p_bs, p_mt, quad);
    });

    for (int n = 1; n <= n_max; ++n) {
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            int k = ks[ki];
            double rate = rates[static_cast<std::size_t>(n - 1) * ks.size() + ki];
            // The omni MT has no mode distinction; report it once as limited.
            std::vector<OverheadMode> modes =
                k == 0 ? std::vector<OverheadMode>{OverheadMode::Limited}
                       : std::vector<OverheadMode>{OverheadMode::Limited, OverheadMode::Full,
                                                   OverheadMode::Probabilistic};
            for (OverheadMode mode : modes) {
                double overhead = total_overhead(mode, n, k, lambda, p.mobility.speed_mps,
                                                 p.mobility.ssb_period_s,
                                                 p.mobility.beam_reselect_delay_s,
                                                 p.mobility.cell_handover_delay_s);
                double ase = lambda * std::max(0.0, 1.0 - overhead) * rate;
                table.rows.push_back({static_cast<double>(n), static_cast<double>(k),
                                      std::string(to_string(mode)), ase,
                                      effective_ase_to_report_units(ase, p.scenario.bandwidth_hz)});
            }
        }
    }
    append_standard_metadata(table, p.scenario, p.mobility, quad);
    return table;
}

/// Misalignment-probability sweep over one secondary axis.
inline CurveTable p_bm_grid(Axis secondary, int n_max) {
    Preset base = preset("FR2-250");  // FR2 radio values; density comes from the axis or 200 m
    base.scenario.bs_intensity_per_m2 = isd_to_intensity(200.0);
    SweepSpec spec;
    spec.scenario = base.scenario;
    spec.mobility = base.mobility;
    spec.metric = Metric::PBmBs;
    Axis n_axis{Axis::Kind::N, {}, {}};
    for (int n = 1; n <= n_max; ++n) n_axis.values.push_back(n);
    spec.axes = {secondary, n_axis};
    return run_sweep(spec);
}

/// Full (n, k) effective-ASE surface at ISD 200 m for one overhead mode.
inline CurveTable ase_surface(OverheadMode mode, const QuadratureSettings& quad) {
    Preset p = preset("FR2-250");
    p.scenario.bs_intensity_per_m2 = isd_to_intensity(200.0);
    p.mobility.overhead_mode = mode;
    SweepSpec spec;
    spec.scenario = p.scenario;
    spec.mobility = p.mobility;
    spec.quadrature = quad;
    spec.metric = Metric::EffectiveAse;
    Axis n_axis{Axis::Kind::N, {}, {}};
    for (int n = 1; n <= 10; ++n) n_axis.values.push_back(n);
    Axis k_axis{Axis::Kind::K, {}, {}};
    for (int k = 0; k <= 9; ++k) k_axis.values.push_back(k);
    spec.axes = {n_axis, k_axis};
    return run_sweep(spec);
}

/// The reference heterogeneous population: 60/30/10 percent omni/2-beam/
/// 4-beam MTs, 60 percent at 3 km/h and 40 percent at 30 km/h.
inline MtMix reference_mix(OverheadMode mode) {
    return MtMix{{{0.6, 0, mode}, {0.3, 1, mode}, {0.1, 2, mode}},
                 {{0.6, kmh_to_mps(3.0)}, {0.4, kmh_to_mps(30.0)}}};
}

inline CurveTable mixed_ase_curves(const QuadratureSettings& quad) {
    Preset p = preset("FR2-250");
    p.scenario.bs_intensity_per_m2 = isd_to_intensity(200.0);
    CurveTable table;
    table.columns = {"overhead_mode", "n", "mixed_effective_ase_nats_per_s_per_m2",
                     "mixed_effective_ase_nats_per_s_per_hz_per_km2"};
    const int n_max = 12;
    for (OverheadMode mode : {OverheadMode::Limited, OverheadMode::Full}) {
        MtMix mix = reference_mix(mode);
        std::vector<double> values(n_max);
        parallel_for(values.size(), [&](std::size_t i) {
            values[i] = mixed_effective_ase(mix, static_cast<int>(i) + 1, p.scenario,
                                            GainModel::standard(), p.mobility.ssb_period_s,
                                            p.mobility.beam_reselect_delay_s,
                                            p.mobility.cell_handover_delay_s, quad);
        });
        for (int n = 1; n <= n_max; ++n) {
            double v = values[static_cast<std::size_t>(n - 1)];
            table.rows.push_back({std::string(to_string(mode)), static_cast<double>(n), v,
                                  effective_ase_to_report_units(v, p.scenario.bandwidth_hz)});
        }
    }
    append_standard_metadata(table, p.scenario, p.mobility, quad);
    return table;
}

}  // namespace detail

/// Emits the named recipe. Unknown ids raise an error listing the valid set.
inline CurveTable reproduce(const std::string& figure_id, const QuadratureSettings& quad = {}) {
    if (figure_id == "fig4a")
        return detail::ase_isd_speed_grid("FR1", {250, 500, 1000}, {3, 30, 120}, 10, quad);
    if (figure_id == "fig4b")
        return detail::ase_isd_speed_grid("FR2", {75, 125, 250}, {3, 30}, 10, quad);
    if (figure_id == "fig5") return detail::ase_mt_beams_grid("FR2-75", 10, quad);
    if (figure_id == "fig6") return detail::ase_mt_beams_grid("FR2-250", 10, quad);
    if (figure_id == "fig7a")
        return detail::p_bm_grid(Axis{Axis::Kind::Isd, {25, 75, 250, 500, 1000}, {}}, 10);
    if (figure_id == "fig7b")
        return detail::p_bm_grid(Axis{Axis::Kind::Speed, {3, 30, 120, 250}, {}}, 10);
    if (figure_id == "fig7c")
        return detail::p_bm_grid(Axis{Axis::Kind::Tau, {5, 10, 20, 40, 80, 160}, {}}, 10);
    if (figure_id == "fig8a") return detail::ase_surface(OverheadMode::Limited, quad);
    if (figure_id == "fig8b") return detail::ase_surface(OverheadMode::Full, quad);
    if (figure_id == "fig9") {
        Preset p = preset("FR2-250");
        p.mobility.speed_mps = kmh_to_mps(30.0);
        SweepSpec spec;
        spec.scenario = p.scenario;
        spec.mobility = p.mobility;
        spec.base_k = 1;
        spec.metric = Metric::OverheadFraction;
        Axis isd_axis{Axis::Kind::Isd, {50, 200}, {}};
        Axis mode_axis{Axis::Kind::Mode, {}, {OverheadMode::Limited, OverheadMode::Full,
                                              OverheadMode::Probabilistic}};
        Axis n_axis{Axis::Kind::N, {}, {}};
        for (int n = 1; n <= 10; ++n) n_axis.values.push_back(n);
        // Three logical axes; emit one two-axis sweep per ISD and merge.
        CurveTable merged;
        for (double isd : isd_axis.values) {
            SweepSpec s = spec;
            s.scenario.bs_intensity_per_m2 = isd_to_intensity(isd);
            s.axes = {mode_axis, n_axis};
            CurveTable t = run_sweep(s);
            if (merged.columns.empty()) {
                merged.columns = {"isd_m"};
                merged.columns.insert(merged.columns.end(), t.columns.begin(), t.columns.end());
                merged.metadata = t.metadata;
            }
            for (auto& row : t.rows) {
                std::vector<CurveTable::Cell> r{isd};
                r.insert(r.end(), row.begin(), row.end());
                merged.rows.push_back(std::move(r));
            }
        }
        return merged;
    }
    if (figure_id == "fig10") return detail::mixed_ase_curves(quad);

    std::string msg = "unknown figure id '" + figure_id + "'; valid ids:";
    for (const auto& id : reproduce_ids()) msg += " " + id;
    throw std::invalid_argument(msg);
}

}  // namespace beamplan
