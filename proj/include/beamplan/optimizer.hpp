// Exhaustive argmax searches over beam-count exponents and the
// heterogeneous-MT effective ASE. Grids are small by construction, so
// every point is evaluated (concurrently, reduced in grid order) and the
// whole curve is returned alongside the optimum.
#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "beamplan/mobility.hpp"
#include "beamplan/parallel.hpp"

namespace beamplan {

/// Population of MT types (beam exponent + overhead mode) and speed
/// classes; both weight sets must each sum to 1.
struct MtMix {
    struct Entry {
        double weight;
        int mt_exponent;
        OverheadMode mode;
    };
    struct SpeedClass {
        double weight;
        double speed_mps;
    };
    std::vector<Entry> entries;
    std::vector<SpeedClass> speed_classes;
};

inline void validate(const MtMix& mix) {
    if (mix.entries.empty() || mix.speed_classes.empty())
        throw std::invalid_argument("MT mix needs at least one entry and one speed class");
    double we = 0.0, ws = 0.0;
    for (const auto& e : mix.entries) we += e.weight;
    for (const auto& s : mix.speed_classes) ws += s.weight;
    if (std::abs(we - 1.0) > 1e-9 || std::abs(ws - 1.0) > 1e-9)
        throw std::invalid_argument("MT mix weights must sum to 1");
}

struct Optimum {
    int best_n = 0;
    int best_k = 0;
    double best_value = 0.0;
    struct Point {
        int n;
        int k;
        double value;
        bool failed;  // quadrature did not converge; excluded from the argmax
    };
    std::vector<Point> full_curve;
};

namespace detail {

inline Optimum argmax_over_curve(std::vector<Optimum::Point> curve) {
    Optimum out;
    out.full_curve = std::move(curve);
    bool found = false;
    for (const auto& p : out.full_curve) {
        if (p.failed) continue;
        // Scanning in (n, k)-ascending order and demanding a relative
        // improvement breaks ties (including last-ulp quadrature jitter)
        // toward fewer beams.
        double margin = 1e-12 * std::max(std::abs(p.value), std::abs(out.best_value));
        if (!found || p.value > out.best_value + margin) {
            out.best_n = p.n;
            out.best_k = p.k;
            out.best_value = p.value;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("no grid point evaluated successfully");
    return out;
}

}  // namespace detail

/// Best BS beam exponent for a fixed MT exponent: exhaustive effective-ASE
/// evaluation over n_range (inclusive).
inline Optimum optimal_n(int mt_exponent, const Scenario& scenario,
                         const MobilityProfile& mobility, const GainModel& gain_model,
                         std::pair<int, int> n_range = {1, 12},
                         const QuadratureSettings& settings = {}) {
    if (n_range.second < n_range.first) throw std::invalid_argument("empty n range");
    std::size_t count = static_cast<std::size_t>(n_range.second - n_range.first + 1);
    std::vector<Optimum::Point> curve(count);
    parallel_for(count, [&](std::size_t i) {
        int n = n_range.first + static_cast<int>(i);
        BeamConfig config(n, mt_exponent);
        try {
            curve[i] = {n, mt_exponent,
                        effective_ase(scenario, config, mobility, gain_model, settings), false};
        } catch (const QuadratureError&) {
            curve[i] = {n, mt_exponent, std::nan(""), true};
        }
    });
    return detail::argmax_over_curve(std::move(curve));
}

/// Joint best (n, k) over the full grid.
inline Optimum optimal_nk(const Scenario& scenario, const MobilityProfile& mobility,
                          const GainModel& gain_model, std::pair<int, int> n_range = {1, 12},
                          std::pair<int, int> k_range = {0, 9},
                          const QuadratureSettings& settings = {}) {
    if (n_range.second < n_range.first || k_range.second < k_range.first)
        throw std::invalid_argument("empty search range");
    std::size_t n_count = static_cast<std::size_t>(n_range.second - n_range.first + 1);
    std::size_t k_count = static_cast<std::size_t>(k_range.second - k_range.first + 1);
    std::vector<Optimum::Point> curve(n_count * k_count);
    parallel_for(curve.size(), [&](std::size_t i) {
        int n = n_range.first + static_cast<int>(i / k_count);
        int k = k_range.first + static_cast<int>(i % k_count);
        BeamConfig config(n, k);
        try {
            curve[i] = {n, k, effective_ase(scenario, config, mobility, gain_model, settings),
                        false};
        } catch (const QuadratureError&) {
            curve[i] = {n, k, std::nan(""), true};
        }
    });
    return detail::argmax_over_curve(std::move(curve));
}

/// Effective ASE of a mixed MT population at BS exponent n: the rate and
/// the overhead are evaluated per (MT type, speed class) pair and averaged
/// with the product weights. Scenario-level parameters (density, band) are
/// shared; tau and the delays are common system design values.
inline double mixed_effective_ase(const MtMix& mix, int bs_exponent, const Scenario& scenario,
                                  const GainModel& gain_model, double ssb_period_s,
                                  double beam_reselect_delay_s, double cell_handover_delay_s,
                                  const QuadratureSettings& settings = {}) {
    validate(mix);
    const double lambda = scenario.bs_intensity_per_m2;

    // The rate depends on the mix only through (k, v); cache across entries.
    std::map<std::pair<int, double>, double> rate_cache;
    auto rate_at = [&](int k, double v) {
        auto key = std::make_pair(k, v);
        auto it = rate_cache.find(key);
        if (it != rate_cache.end()) return it->second;
        BeamConfig config(bs_exponent, k);
        double p_bs = misalignment_prob_bs(bs_exponent, lambda, v, ssb_period_s);
        double p_mt = misalignment_prob_mt(k, lambda, v, ssb_period_s);
        double r = ergodic_rate(scenario, config, gain_model, p_bs, p_mt, settings);
        rate_cache.emplace(key, r);
        return r;
    };

    double total = 0.0;
    for (const auto& speed : mix.speed_classes) {
        for (const auto& entry : mix.entries) {
            double overhead =
                total_overhead(entry.mode, bs_exponent, entry.mt_exponent, lambda,
                               speed.speed_mps, ssb_period_s, beam_reselect_delay_s,
                               cell_handover_delay_s);
            double airtime = std::max(0.0, 1.0 - overhead);
            if (airtime == 0.0) continue;
            total += speed.weight * entry.weight * lambda * airtime *
                     rate_at(entry.mt_exponent, speed.speed_mps);
        }
    }
    return total;
}

}  // namespace beamplan
