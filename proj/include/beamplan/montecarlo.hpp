// Simulation ground truth, independent of the quadrature engine.
//
// Network snapshots place BSs as a PPP restricted to a disk around the
// typical MT. Points are generated nearest-first (squared distances from
// the origin form a 1-D Poisson process of rate lambda pi, so successive
// gaps are exponential), which yields the Poisson count, the serving BS and
// the interferer list in one pass without a Poisson sampler. Trajectory
// experiments walk a straight segment through a PPP window, advancing
// serving BSs at exact bisector crossings.
//
// Every realization i draws from RandomStream(seed, i); per-realization
// results land in slot i and are reduced in index order, so estimates are
// identical for any thread count and invariant under processing order.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "beamplan/geometry.hpp"
#include "beamplan/parallel.hpp"
#include "beamplan/random.hpp"
#include "beamplan/scenario.hpp"

namespace beamplan {

struct Fading {
    enum class Kind { Rayleigh, Nakagami };
    Kind kind = Kind::Rayleigh;
    /// Shape for the Nakagami case; the power gain is Gamma(m, 1/m) with
    /// unit mean, applied on LOS links only (NLOS links stay Rayleigh).
    double nakagami_m = 4.0;

    static Fading rayleigh() { return {}; }
    static Fading nakagami(double m = 4.0) { return {Kind::Nakagami, m}; }
};

struct SimulationPlan {
    std::uint64_t seed = 1;
    std::size_t realizations = 10'000;
    /// Sampling window radius in units of 1/sqrt(lambda).
    double window_radius_factor = 15.0;
    Fading fading = Fading::rayleigh();
};

inline void validate(const SimulationPlan& plan) {
    if (plan.realizations < 1) throw std::invalid_argument("need at least one realization");
    if (!(plan.window_radius_factor >= 5.0))
        throw std::invalid_argument("window radius factor below 5 invites edge effects");
    if (plan.fading.kind == Fading::Kind::Nakagami && !(plan.fading.nakagami_m > 0.0))
        throw std::invalid_argument("Nakagami shape must be positive");
}

struct EstimateWithError {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t sample_count = 0;
    /// Degenerate realizations (empty window, boundary-unsafe handover)
    /// that were redrawn.
    std::size_t resampled = 0;
};

/// One downlink snapshot outcome; also the raw-dump CSV row.
struct SinrSample {
    double sinr;
    double serving_distance_m;
    double serving_gain;
    bool los;
};

struct SinrBatch {
    std::vector<SinrSample> samples;
    std::size_t resampled = 0;
};

namespace detail {

struct DiscreteSampler {
    // Inverse-CDF over up to four atoms.
    double value[4];
    double cum[4];
    int count = 0;

    explicit DiscreteSampler(const GainPmf& pmf) {
        double acc = 0.0;
        for (const auto& e : pmf.entries) {
            if (e.probability <= 0.0) continue;
            acc += e.probability;
            value[count] = e.gain;
            cum[count] = acc;
            ++count;
        }
        cum[count - 1] = 1.0;  // guard against rounding at the top
    }
    double draw(RandomStream& rng) const {
        double u = rng.uniform01();
        for (int i = 0; i < count; ++i)
            if (u < cum[i]) return value[i];
        return value[count - 1];
    }
};

inline double fading_power(RandomStream& rng, const Fading& fading, bool los) {
    if (fading.kind == Fading::Kind::Nakagami && los)
        return rng.gamma(fading.nakagami_m, 1.0 / fading.nakagami_m);
    return rng.exponential(1.0);
}

}  // namespace detail

/// Draws plan.realizations SINR snapshots of the typical MT. The serving
/// gain comes from the misalignment-weighted serving pmf unless pinned;
/// interferer gains are i.i.d. from the interferer pmf.
inline SinrBatch simulate_sinr_samples(const Scenario& scenario, const BeamConfig& config,
                                       const GainModel& gain_model,
                                       const MobilityProfile& mobility,
                                       const SimulationPlan& plan,
                                       std::optional<double> pinned_serving_gain = {}) {
    validate(plan);
    validate(scenario);

    const double lambda = scenario.bs_intensity_per_m2;
    const double window_radius = plan.window_radius_factor / std::sqrt(lambda);
    const double window_radius_sq = window_radius * window_radius;
    const double gap_mean = 1.0 / (lambda * pi);
    const double k_const = scenario.path_loss_constant();
    const double noise = scenario.noise_power_w();
    const double tx = scenario.tx_power_w;
    const double a_l = scenario.alpha_los;
    const double a_n = scenario.alpha_nlos;
    const bool has_ball = scenario.has_los_ball();
    const double rc = has_ball ? *scenario.los_ball_radius_m : 0.0;

    const double p_bs = misalignment_prob_bs(config.bs_exponent(), lambda, mobility.speed_mps,
                                             mobility.ssb_period_s);
    const double p_mt = misalignment_prob_mt(config.mt_exponent(), lambda, mobility.speed_mps,
                                             mobility.ssb_period_s);
    const detail::DiscreteSampler serving(serving_gain_pmf(config, p_bs, p_mt, gain_model));
    const detail::DiscreteSampler interferer(interferer_gain_pmf(config, gain_model));

    SinrBatch batch;
    batch.samples.resize(plan.realizations);
    std::vector<std::uint32_t> redraws(plan.realizations, 0);

    parallel_for(plan.realizations, [&](std::size_t i) {
        RandomStream rng(plan.seed, i);
        while (true) {
            double dist_sq = rng.exponential(gap_mean);
            if (dist_sq > window_radius_sq) {
                ++redraws[i];  // empty window; essentially unreachable at factor >= 5
                continue;
            }
            double serving_distance = std::sqrt(dist_sq);
            bool serving_los = has_ball && serving_distance < rc;
            double g0 = pinned_serving_gain ? *pinned_serving_gain : serving.draw(rng);
            double h0 = detail::fading_power(rng, plan.fading, serving_los);
            double alpha0 = serving_los ? a_l : a_n;
            double signal = tx * g0 * h0 * k_const * std::pow(serving_distance, -alpha0);

            double interference = 0.0;
            for (double s = dist_sq;;) {
                s += rng.exponential(gap_mean);
                if (s > window_radius_sq) break;
                double d = std::sqrt(s);
                bool los = has_ball && d < rc;
                double g = interferer.draw(rng);
                double h = detail::fading_power(rng, plan.fading, los);
                interference += tx * g * h * k_const * std::pow(d, -(los ? a_l : a_n));
            }

            batch.samples[i] =
                SinrSample{signal / (noise + interference), serving_distance, g0, serving_los};
            break;
        }
    });

    for (auto r : redraws) batch.resampled += r;
    return batch;
}

/// Fraction of samples with SINR above beta, with the exact binomial
/// standard error. Counting is integral, so the estimate is exactly
/// invariant under sample order.
inline EstimateWithError coverage_from_samples(const SinrBatch& batch, double beta) {
    std::size_t n = batch.samples.size();
    std::size_t hits = 0;
    for (const auto& s : batch.samples) hits += (s.sinr > beta) ? 1 : 0;
    double p = static_cast<double>(hits) / static_cast<double>(n);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {p, se, n, batch.resampled};
}

inline EstimateWithError simulate_coverage(const Scenario& scenario, const BeamConfig& config,
                                           const GainModel& gain_model,
                                           const MobilityProfile& mobility, double beta,
                                           const SimulationPlan& plan,
                                           std::optional<double> pinned_serving_gain = {}) {
    return coverage_from_samples(
        simulate_sinr_samples(scenario, config, gain_model, mobility, plan, pinned_serving_gain),
        beta);
}

/// Mean of W ln(1 + min(SINR, Q_max)) over the batch, in nats/s.
inline EstimateWithError rate_from_samples(const SinrBatch& batch, double bandwidth_hz,
                                           double sinr_cap_linear) {
    std::size_t n = batch.samples.size();
    double sum = 0.0;
    for (const auto& s : batch.samples)
        sum += bandwidth_hz * std::log1p(std::min(s.sinr, sinr_cap_linear));
    double mean = sum / static_cast<double>(n);
    // Two-pass variance; the one-pass form cancels catastrophically for
    // rate-scale values.
    double ss = 0.0;
    for (const auto& s : batch.samples) {
        double d = bandwidth_hz * std::log1p(std::min(s.sinr, sinr_cap_linear)) - mean;
        ss += d * d;
    }
    double se = n > 1 ? std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)))
                      : 0.0;
    return {mean, se, n, batch.resampled};
}

inline EstimateWithError simulate_rate(const Scenario& scenario, const BeamConfig& config,
                                       const GainModel& gain_model,
                                       const MobilityProfile& mobility,
                                       const SimulationPlan& plan) {
    return rate_from_samples(
        simulate_sinr_samples(scenario, config, gain_model, mobility, plan, {}),
        scenario.bandwidth_hz, scenario.sinr_cap_linear);
}

struct CrossingRates {
    EstimateWithError cell_per_m;
    EstimateWithError beam_per_m;
};

/// Counts Voronoi cell changes and beam-boundary line crossings along a
/// straight segment per realization. Beam boundaries are 2^(n-1) full lines
/// through the serving BS at a uniformly random rotation, one draw per
/// visited cell. Requires enough expected crossings per trajectory
/// (length * sqrt(lambda) >= 10).
inline CrossingRates simulate_crossings(double lambda_per_m2, int bs_exponent,
                                        double trajectory_length_m, const SimulationPlan& plan) {
    validate(plan);
    if (!(lambda_per_m2 > 0.0)) throw std::domain_error("BS intensity must be > 0");
    if (bs_exponent < 1) throw std::invalid_argument("BS beam exponent must be >= 1");
    if (!(trajectory_length_m * std::sqrt(lambda_per_m2) >= 10.0))
        throw std::invalid_argument("trajectory too short for a stable crossing count");

    const double length = trajectory_length_m;
    const double margin = plan.window_radius_factor / std::sqrt(lambda_per_m2);
    const double x_lo = -margin, x_hi = length + margin;
    const double strip_height = 2.0 * margin;
    const double x_gap_mean = 1.0 / (lambda_per_m2 * strip_height);
    const int boundary_lines = 1 << (bs_exponent - 1);
    const double line_spacing = pi / boundary_lines;

    std::vector<double> cell_rate(plan.realizations), beam_rate(plan.realizations);
    std::vector<std::uint32_t> redraws(plan.realizations, 0);

    parallel_for(plan.realizations, [&](std::size_t i) {
        RandomStream rng(plan.seed, i);
        std::vector<double> px, py;
        while (true) {
            px.clear();
            py.clear();
            for (double x = x_lo + rng.exponential(x_gap_mean); x < x_hi;
                 x += rng.exponential(x_gap_mean)) {
                px.push_back(x);
                py.push_back(rng.uniform(-margin, margin));
            }
            if (px.empty()) {
                ++redraws[i];
                continue;
            }

            // Trajectory is the segment (0,0) -> (length,0) in this frame;
            // the point process is isotropic so this is a uniformly random
            // direction through the network.
            auto dist_sq_at = [&](std::size_t j, double t) {
                double dx = t - px[j], dy = py[j];
                return dx * dx + dy * dy;
            };
            std::size_t serving = 0;
            for (std::size_t j = 1; j < px.size(); ++j)
                if (dist_sq_at(j, 0.0) < dist_sq_at(serving, 0.0)) serving = j;

            std::size_t cells = 0, beams = 0;
            double t0 = 0.0;
            auto count_beams = [&](std::size_t s, double ta, double tb) {
                double offset = rng.uniform(0.0, pi);
                for (int l = 0; l < boundary_lines; ++l) {
                    double angle = offset + l * line_spacing;
                    double nx = -std::sin(angle), ny = std::cos(angle);
                    double da = (ta - px[s]) * nx - py[s] * ny;
                    double db = (tb - px[s]) * nx - py[s] * ny;
                    if (da * db < 0.0) ++beams;
                }
            };
            for (int guard = 0; guard < 100000; ++guard) {
                // Earliest bisector crossing after t0: |p(t)-X_j| = |p(t)-X_s|
                // is linear in t because |p(t)|^2 cancels.
                double best_t = length;
                std::size_t best_j = serving;
                double norm_s = px[serving] * px[serving] + py[serving] * py[serving];
                for (std::size_t j = 0; j < px.size(); ++j) {
                    if (j == serving) continue;
                    double dx = px[j] - px[serving];
                    if (dx == 0.0) continue;
                    double t = (px[j] * px[j] + py[j] * py[j] - norm_s) / (2.0 * dx);
                    if (t > t0 + 1e-9 && t < best_t) {
                        best_t = t;
                        best_j = j;
                    }
                }
                count_beams(serving, t0, best_t);
                if (best_j == serving) break;  // no further handover before the end
                ++cells;
                serving = best_j;
                t0 = best_t;
            }
            cell_rate[i] = static_cast<double>(cells) / length;
            beam_rate[i] = static_cast<double>(beams) / length;
            break;
        }
    });

    auto reduce = [&](const std::vector<double>& v) {
        double sum = 0.0;
        for (double x : v) sum += x;
        double n = static_cast<double>(v.size());
        double mean = sum / n;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        double se = v.size() > 1 ? std::sqrt(ss / ((n - 1.0) * n)) : 0.0;
        std::size_t resampled = 0;
        for (auto r : redraws) resampled += r;
        return EstimateWithError{mean, se, v.size(), resampled};
    };
    return CrossingRates{reduce(cell_rate), reduce(beam_rate)};
}

/// Fraction of BS handovers that move the serving BS into a different MT
/// panel sector. Straight trajectories are walked handover by handover;
/// each crossing gets a fresh uniformly rotated 2^k-sector partition
/// anchored at the crossing point, and the estimate is the ratio of
/// switches to handovers over all trajectories. Averaging over consecutive
/// crossings matters: sampling only the first crossing seen from a fixed
/// location would weight it by the preceding gap length and bias the
/// geometry. plan.realizations requests roughly that many handover trials;
/// sample_count reports the number actually observed.
inline EstimateWithError simulate_beam_switch(double lambda_per_m2, int mt_exponent,
                                              const SimulationPlan& plan) {
    validate(plan);
    if (mt_exponent < 1) throw std::invalid_argument("beam switch needs a directional MT (k >= 1)");
    if (!(lambda_per_m2 > 0.0)) throw std::domain_error("BS intensity must be > 0");

    const double sector_width = 2.0 * pi / std::exp2(mt_exponent);
    constexpr double kHandoversPerTrajectory = 8.0;
    const double length = kHandoversPerTrajectory * pi / (4.0 * std::sqrt(lambda_per_m2));
    const std::size_t trajectories =
        (plan.realizations + static_cast<std::size_t>(kHandoversPerTrajectory) - 1) /
        static_cast<std::size_t>(kHandoversPerTrajectory);
    const double margin = plan.window_radius_factor / std::sqrt(lambda_per_m2);
    const double x_lo = -margin, x_hi = length + margin;
    const double x_gap_mean = 1.0 / (lambda_per_m2 * 2.0 * margin);

    std::vector<double> switches(trajectories, 0.0), handovers(trajectories, 0.0);
    std::vector<std::uint32_t> redraws(trajectories, 0);

    parallel_for(trajectories, [&](std::size_t i) {
        RandomStream rng(plan.seed, i);
        std::vector<double> px, py;
        while (true) {
            px.clear();
            py.clear();
            for (double x = x_lo + rng.exponential(x_gap_mean); x < x_hi;
                 x += rng.exponential(x_gap_mean)) {
                px.push_back(x);
                py.push_back(rng.uniform(-margin, margin));
            }
            if (px.empty()) {
                ++redraws[i];
                continue;
            }
            auto dist_sq_at = [&](std::size_t j, double t) {
                double dx = t - px[j], dy = py[j];
                return dx * dx + dy * dy;
            };
            std::size_t serving = 0;
            for (std::size_t j = 1; j < px.size(); ++j)
                if (dist_sq_at(j, 0.0) < dist_sq_at(serving, 0.0)) serving = j;

            double t0 = 0.0;
            double sw = 0.0, ho = 0.0;
            for (int guard = 0; guard < 100000; ++guard) {
                double best_t = length;
                std::size_t best_j = serving;
                double norm_s = px[serving] * px[serving] + py[serving] * py[serving];
                for (std::size_t j = 0; j < px.size(); ++j) {
                    if (j == serving) continue;
                    double dx = px[j] - px[serving];
                    if (dx == 0.0) continue;
                    double t = (px[j] * px[j] + py[j] * py[j] - norm_s) / (2.0 * dx);
                    if (t > t0 + 1e-9 && t < best_t) {
                        best_t = t;
                        best_j = j;
                    }
                }
                if (best_j == serving) break;
                double rotation = rng.uniform(0.0, 2.0 * pi);
                auto sector_of = [&](std::size_t j) {
                    double a = std::atan2(py[j], px[j] - best_t) - rotation;
                    a = std::fmod(a, 2.0 * pi);
                    if (a < 0.0) a += 2.0 * pi;
                    return static_cast<int>(a / sector_width);
                };
                ho += 1.0;
                if (sector_of(serving) != sector_of(best_j)) sw += 1.0;
                serving = best_j;
                t0 = best_t;
            }
            switches[i] = sw;
            handovers[i] = ho;
            break;
        }
    });

    double total_sw = 0.0, total_ho = 0.0;
    std::size_t resampled = 0;
    for (std::size_t i = 0; i < trajectories; ++i) {
        total_sw += switches[i];
        total_ho += handovers[i];
        resampled += redraws[i];
    }
    double p = total_ho > 0.0 ? total_sw / total_ho : 0.0;
    // Ratio-estimator standard error over trajectory clusters.
    double ss = 0.0;
    for (std::size_t i = 0; i < trajectories; ++i) {
        double d = switches[i] - p * handovers[i];
        ss += d * d;
    }
    double se = (total_ho > 0.0 && trajectories > 1)
                    ? std::sqrt(ss * static_cast<double>(trajectories) /
                                (static_cast<double>(trajectories) - 1.0)) /
                          total_ho
                    : 0.0;
    return {p, se, static_cast<std::size_t>(total_ho), resampled};
}

}  // namespace beamplan
