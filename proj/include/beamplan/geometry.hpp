// Sectorized beam geometry: beamwidths, lobe gains, mobility-induced
// misalignment probabilities, the four-point gain distributions of the
// serving and interfering links, and the two-slope path-loss law.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "beamplan/scenario.hpp"
#include "beamplan/units.hpp"

namespace beamplan {

/// Beam counts as exponents: 2^n beams at the BS (n >= 1), 2^k at the MT.
/// k = 0 is the omnidirectional MT; with unit gains, zero beam-switch
/// probability and overhead multiplier 2^0 = 1 every formula collapses to
/// the omni case without branching.
class BeamConfig {
  public:
    BeamConfig(int bs_exponent, int mt_exponent)
        : bs_exponent_(bs_exponent), mt_exponent_(mt_exponent) {
        if (bs_exponent < 1) throw std::invalid_argument("BS beam exponent must be >= 1");
        if (mt_exponent < 0) throw std::invalid_argument("MT beam exponent must be >= 0");
    }
    int bs_exponent() const { return bs_exponent_; }
    int mt_exponent() const { return mt_exponent_; }
    double bs_beamwidth() const;
    double mt_beamwidth() const;

  private:
    int bs_exponent_;
    int mt_exponent_;
};

/// phi_e = pi / 2^(e-1); the e = 0 case evaluates to 2 pi, which is exactly
/// the omnidirectional convention.
inline double beamwidth(int exponent) {
    return pi * std::exp2(1 - exponent);
}

inline double BeamConfig::bs_beamwidth() const { return beamwidth(bs_exponent_); }
inline double BeamConfig::mt_beamwidth() const { return beamwidth(mt_exponent_); }

/// Main/side lobe gain as a function of the beam-count exponent. The default
/// is the 2^e / 2^-e pattern; alternative patterns plug in here as long as
/// main >= side > 0 and both are 1 at e = 0.
struct GainModel {
    std::function<double(int)> main_gain = [](int e) { return std::exp2(e); };
    std::function<double(int)> side_gain = [](int e) { return std::exp2(-e); };
    static GainModel standard() { return GainModel{}; }
    /// Unit gain everywhere; turns the array into an isotropic antenna.
    static GainModel isotropic() {
        return GainModel{[](int) { return 1.0; }, [](int) { return 1.0; }};
    }
};

/// The four composite gains of a BS-MT link, resolved once per (n, k).
struct LinkGains {
    double bs_main, bs_side, mt_main, mt_side;
};

inline LinkGains resolve_gains(const GainModel& model, const BeamConfig& config) {
    LinkGains g{model.main_gain(config.bs_exponent()), model.side_gain(config.bs_exponent()),
                model.main_gain(config.mt_exponent()), model.side_gain(config.mt_exponent())};
    if (!(g.bs_side > 0) || !(g.mt_side > 0) || g.bs_main < g.bs_side || g.mt_main < g.mt_side)
        throw std::domain_error("gain model must satisfy main >= side > 0");
    return g;
}

/// Four-point distribution over composite antenna gains, in fixed branch
/// order (BS main x MT main, main x side, side x main, side x side).
struct GainPmf {
    struct Entry {
        double gain;
        double probability;
    };
    std::array<Entry, 4> entries;

    double mean_gain() const {
        double m = 0.0;
        for (const auto& e : entries) m += e.gain * e.probability;
        return m;
    }
    double total_probability() const {
        double p = 0.0;
        for (const auto& e : entries) p += e.probability;
        return p;
    }
};

/// Probability that between two SSBs the MT has moved past a BS beam
/// boundary, 1 - exp(-v tau 2^n sqrt(lambda) / pi).
inline double misalignment_prob_bs(int bs_exponent, double lambda_per_m2, double speed_mps,
                                   double ssb_period_s) {
    return -std::expm1(-std::exp2(bs_exponent) * std::sqrt(lambda_per_m2) * speed_mps *
                       ssb_period_s / pi);
}

/// MT-side counterpart with 2^k; k = 0 yields a nonzero value that is
/// harmless downstream because omni gains make all branches equal.
inline double misalignment_prob_mt(int mt_exponent, double lambda_per_m2, double speed_mps,
                                   double ssb_period_s) {
    return -std::expm1(-std::exp2(mt_exponent) * std::sqrt(lambda_per_m2) * speed_mps *
                       ssb_period_s / pi);
}

/// Serving-link gain distribution under independent BS/MT misalignment.
inline GainPmf serving_gain_pmf(const BeamConfig& config, double p_bs, double p_mt,
                                const GainModel& gains = GainModel::standard()) {
    if (!(p_bs >= 0.0 && p_bs <= 1.0) || !(p_mt >= 0.0 && p_mt <= 1.0))
        throw std::domain_error("misalignment probabilities must lie in [0, 1]");
    LinkGains g = resolve_gains(gains, config);
    return GainPmf{{{{g.bs_main * g.mt_main, (1 - p_bs) * (1 - p_mt)},
                     {g.bs_main * g.mt_side, (1 - p_bs) * p_mt},
                     {g.bs_side * g.mt_main, p_bs * (1 - p_mt)},
                     {g.bs_side * g.mt_side, p_bs * p_mt}}}};
}

/// Interferer gain distribution from uniformly random beam orientations;
/// branch probabilities are beamwidth fractions phi_n phi_k / 4 pi^2 etc.
/// With k = 0 (phi_k = 2 pi) the MT-side branches collapse naturally.
inline GainPmf interferer_gain_pmf(const BeamConfig& config,
                                   const GainModel& gains = GainModel::standard()) {
    LinkGains g = resolve_gains(gains, config);
    double phi_n = config.bs_beamwidth();
    double phi_k = config.mt_beamwidth();
    double inv = 1.0 / (4.0 * pi * pi);
    return GainPmf{{{{g.bs_main * g.mt_main, phi_n * phi_k * inv},
                     {g.bs_main * g.mt_side, phi_n * (2 * pi - phi_k) * inv},
                     {g.bs_side * g.mt_main, (2 * pi - phi_n) * phi_k * inv},
                     {g.bs_side * g.mt_side, (2 * pi - phi_n) * (2 * pi - phi_k) * inv}}}};
}

/// Two-slope power law l(d) = K d^-alpha_L inside the LOS ball, K d^-alpha_N
/// at or beyond its radius. Single-slope scenarios use alpha_N everywhere.
inline double path_loss(double distance_m, const Scenario& scenario) {
    if (!(distance_m > 0.0)) throw std::domain_error("path loss is singular at distance 0");
    double alpha = scenario.alpha_nlos;
    if (scenario.has_los_ball() && distance_m < *scenario.los_ball_radius_m)
        alpha = scenario.alpha_los;
    return scenario.path_loss_constant() * std::pow(distance_m, -alpha);
}

}  // namespace beamplan
