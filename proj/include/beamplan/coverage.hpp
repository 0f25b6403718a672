// Analytic success probability and ergodic Shannon rate of the typical MT.
//
// The success probability conditioned on serving gain g0 is a nearest-BS
// distance average of exp(noise term + interference exponent), where the
// interference exponent is the PGFL integral of the kernel
//   F(a_s, a_i, w) = 2 pi lambda w * sum_c p_c A_c / (w^a_i + A_c),
//   A_c = beta r^a_s G_c / g0,
// over interferer distances w. Two-slope scenarios split both the serving
// distance and the interferer range at the LOS ball radius; single-slope
// scenarios use the NLOS exponent throughout. Semi-infinite integrals are
// truncated where the w^(1-a_i) envelope tail drops below
// tail_mass_cutoff and evaluated in log space when the range is wide. The
// unconditioned success probability is the misalignment-weighted mixture
// over the four serving-gain branches, and the rate integrates it over the
// threshold: R = W * integral of p_s(e^t - 1) for t in [0, ln(1 + Q_max)].
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "beamplan/geometry.hpp"
#include "beamplan/quadrature.hpp"
#include "beamplan/scenario.hpp"

namespace beamplan {

/// One coverage evaluation point: deployment, beam configuration,
/// misalignment state and linear SINR threshold.
struct CoverageQuery {
    Scenario scenario;
    BeamConfig config{1, 0};
    GainModel gain_model = GainModel::standard();
    double p_bs = 0.0;
    double p_mt = 0.0;
    double threshold = 1.0;  // beta, linear
};

namespace detail {

struct WeightedGain {
    double gain;
    double prob;
};

/// Drops zero-probability entries and merges equal gains (the k = 0 pmfs
/// collapse from four branches to two).
inline std::vector<WeightedGain> condense(const GainPmf& pmf) {
    std::vector<WeightedGain> out;
    out.reserve(4);
    for (const auto& e : pmf.entries) {
        if (e.probability <= 0.0) continue;
        bool merged = false;
        for (auto& w : out) {
            if (w.gain == e.gain) {
                w.prob += e.probability;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({e.gain, e.probability});
    }
    return out;
}

}  // namespace detail

/// Interference kernel of the success-probability integrals (per-meter
/// density in the interferer distance w). Exposed for direct testing; the
/// engine below evaluates the same expression with hoisted constants.
inline double f_kernel(double alpha_s, double alpha_i, double w, double g0, double r, double beta,
                       const BeamConfig& config, const GainModel& gains, double lambda) {
    auto mix = detail::condense(interferer_gain_pmf(config, gains));
    double r_pow = std::pow(r, alpha_s);
    double w_pow = std::pow(w, alpha_i);
    double sum = 0.0;
    for (const auto& m : mix) {
        double a = beta * r_pow * m.gain / g0;
        sum += m.prob * a / (w_pow + a);
    }
    return 2.0 * pi * lambda * w * sum;
}

/// P(SINR > beta | serving gain g0). Evaluates the two-region form when the
/// scenario has a LOS ball and the single-region NLOS form otherwise.
/// Throws QuadratureError when any underlying integral fails to converge.
inline double conditional_success_q(const CoverageQuery& query, double g0,
                                    const QuadratureSettings& settings = {}) {
    const Scenario& sc = query.scenario;
    const double beta = query.threshold;
    if (!(beta >= 0.0)) throw std::domain_error("SINR threshold must be nonnegative");
    if (!(g0 > 0.0)) throw std::domain_error("serving gain must be positive");

    const double lambda = sc.bs_intensity_per_m2;
    const double two_pi_lambda = 2.0 * pi * lambda;
    const double noise_scale =
        beta * sc.noise_power_w() / (sc.tx_power_w * sc.path_loss_constant() * g0);
    const auto mix = detail::condense(interferer_gain_pmf(query.config, query.gain_model));
    const QuadratureSettings inner = settings.inner();
    const double cutoff = settings.tail_mass_cutoff;

    // Interference exponent: integral of F(alpha_s, alpha_i, w) over
    // [from, to], with to = infinity truncated via the envelope tail bound
    // sum_c p_c A_c * 2 pi lambda * W^(2-a_i) / (a_i - 2) <= cutoff.
    auto pgfl_exponent = [&](double r, double alpha_s, double alpha_i, double from,
                             std::optional<double> to) -> double {
        double r_pow = std::pow(r, alpha_s);
        double weights[4];
        double scaled[4];
        std::size_t count = 0;
        double sum_pa = 0.0;
        for (const auto& m : mix) {
            double a = beta * r_pow * m.gain / g0;
            if (a <= 0.0) continue;
            scaled[count] = a;
            weights[count] = m.prob;
            sum_pa += m.prob * a;
            ++count;
        }
        if (count == 0) return 0.0;

        double upper;
        if (to) {
            upper = *to;
        } else {
            upper = std::pow(two_pi_lambda * sum_pa / ((alpha_i - 2.0) * cutoff),
                             1.0 / (alpha_i - 2.0));
        }
        if (!(upper > from)) return 0.0;

        auto kernel = [&](double w) {
            double w_pow = std::pow(w, alpha_i);
            double s = 0.0;
            for (std::size_t i = 0; i < count; ++i)
                s += weights[i] * scaled[i] / (w_pow + scaled[i]);
            return two_pi_lambda * w * s;
        };
        if (upper / from > 32.0) {
            auto log_kernel = [&](double u) {
                double w = std::exp(u);
                return kernel(w) * w;
            };
            return integrate(log_kernel, std::log(from), std::log(upper), inner).value;
        }
        return integrate(kernel, from, upper, inner).value;
    };

    // Nearest-BS distance density 2 pi lambda r exp(-lambda pi r^2); radial
    // truncation keeps the omitted mass (<= exp(-lambda pi R^2)) at cutoff.
    auto nearest_density = [&](double r) { return two_pi_lambda * r * std::exp(-lambda * pi * r * r); };
    const double r_max = std::sqrt(std::log(1.0 / cutoff) / (lambda * pi));

    double q = 0.0;
    if (sc.has_los_ball()) {
        const double rc = *sc.los_ball_radius_m;
        const double a_l = sc.alpha_los;
        const double a_n = sc.alpha_nlos;
        auto los_region = [&](double r) {
            double expo = pgfl_exponent(r, a_l, a_l, r, rc) + pgfl_exponent(r, a_l, a_n, rc, {});
            return nearest_density(r) * std::exp(-noise_scale * std::pow(r, a_l) - expo);
        };
        q += integrate(los_region, 0.0, std::min(rc, r_max), settings).value;
        if (rc < r_max) {
            auto nlos_region = [&](double r) {
                double expo = pgfl_exponent(r, a_n, a_n, r, {});
                return nearest_density(r) * std::exp(-noise_scale * std::pow(r, a_n) - expo);
            };
            q += integrate(nlos_region, rc, r_max, settings).value;
        }
    } else {
        const double a_n = sc.alpha_nlos;
        auto whole_plane = [&](double r) {
            double expo = pgfl_exponent(r, a_n, a_n, r, {});
            return nearest_density(r) * std::exp(-noise_scale * std::pow(r, a_n) - expo);
        };
        q = integrate(whole_plane, 0.0, r_max, settings).value;
    }
    return std::clamp(q, 0.0, 1.0);
}

/// P(SINR > beta): misalignment-weighted mixture of the four conditional
/// evaluations, one per serving-gain branch.
inline double success_probability(const CoverageQuery& query,
                                  const QuadratureSettings& settings = {}) {
    auto serving =
        detail::condense(serving_gain_pmf(query.config, query.p_bs, query.p_mt, query.gain_model));
    double p = 0.0;
    for (const auto& branch : serving)
        p += branch.prob * conditional_success_q(query, branch.gain, settings);
    return std::clamp(p, 0.0, 1.0);
}

/// Rate integral W * int_0^ln(1+cap) p(e^t - 1) dt for an arbitrary success
/// function; the production path and test stubs share this one routine.
template <class F>
double rate_from_success_function(double bandwidth_hz, double sinr_cap_linear, F&& success_at,
                                  const QuadratureSettings& settings = {}) {
    if (!(sinr_cap_linear >= 0.0)) throw std::domain_error("SINR cap must be nonnegative");
    const double upper = std::log1p(sinr_cap_linear);
    auto integrand = [&](double t) { return success_at(std::expm1(t)); };
    return bandwidth_hz * integrate(integrand, 0.0, upper, settings).value;
}

/// Ergodic Shannon rate in nats/s with the SINR capped at the scenario's
/// Q_max (applied as a linear bound).
inline double ergodic_rate(const Scenario& scenario, const BeamConfig& config,
                           const GainModel& gain_model, double p_bs, double p_mt,
                           const QuadratureSettings& settings = {}) {
    const QuadratureSettings inner = settings.inner();
    auto ps = [&](double z) {
        CoverageQuery q{scenario, config, gain_model, p_bs, p_mt, z};
        return success_probability(q, inner);
    };
    return rate_from_success_function(scenario.bandwidth_hz, scenario.sinr_cap_linear, ps,
                                      settings);
}

}  // namespace beamplan
