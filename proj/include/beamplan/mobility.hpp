// Handover and beam-reselection intensities, times of stay, beam-switch
// probability, the three measurement-overhead models and the effective
// area spectral efficiency they discount.
#pragma once

#include <cmath>
#include <limits>

#include "beamplan/coverage.hpp"
#include "beamplan/geometry.hpp"
#include "beamplan/scenario.hpp"

namespace beamplan {

/// BS handovers per second for a straight-line MT, 4 sqrt(lambda) v / pi.
inline double handover_intensity(double lambda_per_m2, double speed_mps) {
    return 4.0 * std::sqrt(lambda_per_m2) * speed_mps / pi;
}

/// Geometry-based beam reselections per second, 2^n sqrt(lambda) v / pi:
/// the two-beam base rate superposed over 2^(n-1) boundary lines.
inline double reselection_intensity(int bs_exponent, double lambda_per_m2, double speed_mps) {
    return std::exp2(bs_exponent) * std::sqrt(lambda_per_m2) * speed_mps / pi;
}

/// Reselection rate achievable through periodic SSB measurements:
/// 1 / max(tau, 1/mu_tb), i.e. SSB-limited once beams get crossed faster
/// than they can be measured.
inline double effective_reselection_intensity(int bs_exponent, double lambda_per_m2,
                                              double speed_mps, double ssb_period_s) {
    double geometric = reselection_intensity(bs_exponent, lambda_per_m2, speed_mps);
    if (geometric <= 0.0) return 0.0;
    return 1.0 / std::max(ssb_period_s, 1.0 / geometric);
}

/// Mean time within one beam's main lobe; infinite for a stationary MT.
inline double time_of_stay(int bs_exponent, double lambda_per_m2, double speed_mps) {
    double geometric = reselection_intensity(bs_exponent, lambda_per_m2, speed_mps);
    if (geometric <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / geometric;
}

/// Mean time a selected beam stays selected, clamped below by the SSB period.
inline double effective_time_of_stay(int bs_exponent, double lambda_per_m2, double speed_mps,
                                     double ssb_period_s) {
    return std::max(ssb_period_s, time_of_stay(bs_exponent, lambda_per_m2, speed_mps));
}

/// Probability that a BS handover lands the new serving BS in a different
/// MT panel sector: (2^k / pi) sin(pi / 2^k), zero for the omni MT.
inline double beam_switch_probability(int mt_exponent) {
    if (mt_exponent < 0) throw std::domain_error("MT beam exponent must be >= 0");
    if (mt_exponent == 0) return 0.0;
    double beams = std::exp2(mt_exponent);
    return beams / pi * std::sin(pi / beams);
}

/// Average measurement overhead per unit time. Limited: each MT panel has
/// its own baseband chain. Full: one chain sweeps all 2^k panels. The
/// probabilistic model skips the panel sweep at handovers that provably
/// need no beam switch. Not clamped at 1; clamping belongs to (1 - T_o)+.
inline double total_overhead(OverheadMode mode, int bs_exponent, int mt_exponent,
                             double lambda_per_m2, double speed_mps, double ssb_period_s,
                             double beam_reselect_delay_s, double cell_handover_delay_s) {
    double mu_b =
        effective_reselection_intensity(bs_exponent, lambda_per_m2, speed_mps, ssb_period_s);
    double mu_c = handover_intensity(lambda_per_m2, speed_mps);
    double beam_term = mu_b * beam_reselect_delay_s;
    double cell_term = mu_c * cell_handover_delay_s;
    double panels = std::exp2(mt_exponent);
    switch (mode) {
        case OverheadMode::Limited:
            return beam_term + cell_term;
        case OverheadMode::Full:
            return panels * (beam_term + cell_term);
        case OverheadMode::Probabilistic: {
            double p_sw = beam_switch_probability(mt_exponent);
            return panels * beam_term + (p_sw * panels + 1.0 - p_sw) * cell_term;
        }
    }
    return 0.0;
}

inline double total_overhead(const BeamConfig& config, const Scenario& scenario,
                             const MobilityProfile& mobility) {
    return total_overhead(mobility.overhead_mode, config.bs_exponent(), config.mt_exponent(),
                          scenario.bs_intensity_per_m2, mobility.speed_mps, mobility.ssb_period_s,
                          mobility.beam_reselect_delay_s, mobility.cell_handover_delay_s);
}

/// All mobility metrics of one (scenario, config, mobility) point.
struct OverheadReport {
    double handover_intensity_hz;              // mu_c
    double geometric_reselection_intensity_hz;  // mu_tb
    double effective_reselection_intensity_hz;  // mu_b
    double geometric_time_of_stay_s;
    double effective_time_of_stay_s;
    double beam_switch_prob;
    double total_overhead_fraction;  // T_o
};

inline OverheadReport overhead_report(const BeamConfig& config, const Scenario& scenario,
                                      const MobilityProfile& mobility) {
    double lambda = scenario.bs_intensity_per_m2;
    int n = config.bs_exponent();
    return OverheadReport{
        handover_intensity(lambda, mobility.speed_mps),
        reselection_intensity(n, lambda, mobility.speed_mps),
        effective_reselection_intensity(n, lambda, mobility.speed_mps, mobility.ssb_period_s),
        time_of_stay(n, lambda, mobility.speed_mps),
        effective_time_of_stay(n, lambda, mobility.speed_mps, mobility.ssb_period_s),
        beam_switch_probability(config.mt_exponent()),
        total_overhead(config, scenario, mobility),
    };
}

/// Effective area spectral efficiency lambda (1 - T_o)+ R(n, k) in
/// nats/s/m^2. The per-Hz per-km^2 normalization used in reports is
/// effective_ase_to_report_units below.
inline double effective_ase(const Scenario& scenario, const BeamConfig& config,
                            const MobilityProfile& mobility,
                            const GainModel& gain_model = GainModel::standard(),
                            const QuadratureSettings& settings = {}) {
    double overhead = total_overhead(config, scenario, mobility);
    double airtime = std::max(0.0, 1.0 - overhead);
    if (airtime == 0.0) return 0.0;
    double p_bs = misalignment_prob_bs(config.bs_exponent(), scenario.bs_intensity_per_m2,
                                       mobility.speed_mps, mobility.ssb_period_s);
    double p_mt = misalignment_prob_mt(config.mt_exponent(), scenario.bs_intensity_per_m2,
                                       mobility.speed_mps, mobility.ssb_period_s);
    double rate = ergodic_rate(scenario, config, gain_model, p_bs, p_mt, settings);
    return scenario.bs_intensity_per_m2 * airtime * rate;
}

/// nats/s/m^2 -> nats/s/Hz/km^2.
inline double effective_ase_to_report_units(double ase_nats_per_s_per_m2, double bandwidth_hz) {
    return ase_nats_per_s_per_m2 / bandwidth_hz * 1e6;
}

}  // namespace beamplan
