// Analytic-vs-simulation validation reports: randomized coverage queries,
// boundary-crossing intensities, and the beam-switch probability. Each
// check prints side-by-side values with a per-row pass verdict; the CLI
// maps any failure to a dedicated exit status.
#pragma once

#include <cstdio>

#include "beamplan/coverage.hpp"
#include "beamplan/mobility.hpp"
#include "beamplan/montecarlo.hpp"
#include "beamplan/sweep.hpp"

namespace beamplan {

struct ValidationRow {
    std::string label;
    double analytic;
    double simulated;
    double standard_error;
    double tolerance;
    bool pass;
};

struct ValidationReport {
    std::string name;
    std::vector<ValidationRow> rows;
    bool all_pass = true;

    void add(std::string label, double analytic, double simulated, double se, double tolerance) {
        bool pass = std::abs(analytic - simulated) <= tolerance;
        all_pass = all_pass && pass;
        rows.push_back({std::move(label), analytic, simulated, se, tolerance, pass});
    }
};

inline void print_report(std::FILE* out, const ValidationReport& report) {
    std::fprintf(out, "== %s ==\n", report.name.c_str());
    std::fprintf(out, "%-44s %14s %14s %12s %12s %6s\n", "case", "analytic", "simulated",
                 "std_error", "tolerance", "ok");
    for (const auto& r : report.rows)
        std::fprintf(out, "%-44s %14.6g %14.6g %12.4g %12.4g %6s\n", r.label.c_str(), r.analytic,
                     r.simulated, r.standard_error, r.tolerance, r.pass ? "pass" : "FAIL");
    std::fprintf(out, "%s: %s\n", report.name.c_str(), report.all_pass ? "all pass" : "FAILED");
}

/// Coverage cross-validation: randomized queries spanning the bundled
/// presets, n in 1..8, k in 0..2, v in {3, 30} km/h; per query one sample
/// batch is shared by all thresholds and each |analytic - simulated| must
/// stay within 3 SE + 0.005.
inline ValidationReport validate_coverage(std::size_t query_count = 20,
                                          std::size_t realizations = 100'000,
                                          std::uint64_t seed = 1,
                                          const std::vector<double>& betas = {1.0, 10.0, 100.0},
                                          const QuadratureSettings& quad = {}) {
    ValidationReport report;
    report.name = "coverage (analytic vs Monte Carlo)";
    RandomStream pick(seed, 0x7fffffffffffffffull);
    const auto& names = preset_names();

    for (std::size_t q = 0; q < query_count; ++q) {
        const std::string& name =
            names[static_cast<std::size_t>(pick.uniform01() * names.size()) % names.size()];
        Preset p = preset(name);
        int n = 1 + static_cast<int>(pick.uniform01() * 8) % 8;
        int k = static_cast<int>(pick.uniform01() * 3) % 3;
        double v_kmh = pick.uniform01() < 0.5 ? 3.0 : 30.0;
        p.mobility.speed_mps = kmh_to_mps(v_kmh);
        BeamConfig config(n, k);

        SimulationPlan plan;
        plan.seed = seed + 1 + q;
        plan.realizations = realizations;
        SinrBatch batch = simulate_sinr_samples(p.scenario, config, GainModel::standard(),
                                                p.mobility, plan);

        double p_bs = misalignment_prob_bs(n, p.scenario.bs_intensity_per_m2,
                                           p.mobility.speed_mps, p.mobility.ssb_period_s);
        double p_mt = misalignment_prob_mt(k, p.scenario.bs_intensity_per_m2,
                                           p.mobility.speed_mps, p.mobility.ssb_period_s);
        for (double beta : betas) {
            CoverageQuery query{p.scenario, config, GainModel::standard(), p_bs, p_mt, beta};
            double analytic = success_probability(query, quad);
            EstimateWithError mc = coverage_from_samples(batch, beta);
            char label[96];
            std::snprintf(label, sizeof label, "q%02zu %s n=%d k=%d v=%g beta=%g", q, name.c_str(),
                          n, k, v_kmh, beta);
            report.add(label, analytic, mc.mean, mc.standard_error,
                       3.0 * mc.standard_error + 0.005);
        }
    }
    return report;
}

/// Crossing intensities along straight trajectories against
/// 4 sqrt(lambda)/pi (cells) and 2^n sqrt(lambda)/pi (beam boundaries),
/// within the given relative tolerance.
inline ValidationReport validate_crossings(double lambda_per_km2 = 100.0,
                                           std::size_t trajectories = 10'000,
                                           std::uint64_t seed = 1,
                                           const std::vector<int>& ns = {1, 4, 6},
                                           double rel_tolerance = 0.02) {
    ValidationReport report;
    report.name = "boundary crossing intensities";
    double lambda = per_km2_to_per_m2(lambda_per_km2);
    double length = std::max(2000.0, 12.0 / std::sqrt(lambda));
    for (int n : ns) {
        SimulationPlan plan;
        plan.seed = seed + static_cast<std::uint64_t>(n);
        plan.realizations = trajectories;
        CrossingRates rates = simulate_crossings(lambda, n, length, plan);
        double cell_expected = 4.0 * std::sqrt(lambda) / pi;
        double beam_expected = std::exp2(n) * std::sqrt(lambda) / pi;
        char label[64];
        std::snprintf(label, sizeof label, "cell crossings per m (n=%d)", n);
        report.add(label, cell_expected, rates.cell_per_m.mean, rates.cell_per_m.standard_error,
                   rel_tolerance * cell_expected);
        std::snprintf(label, sizeof label, "beam crossings per m (n=%d)", n);
        report.add(label, beam_expected, rates.beam_per_m.mean, rates.beam_per_m.standard_error,
                   rel_tolerance * beam_expected);
    }
    return report;
}

/// Beam-switch probability at handovers against (2^k/pi) sin(pi/2^k),
/// within 3 standard errors.
inline ValidationReport validate_beam_switch(std::size_t realizations = 100'000,
                                             std::uint64_t seed = 1,
                                             const std::vector<int>& ks = {1, 2, 3}) {
    ValidationReport report;
    report.name = "beam-switch probability at handover";
    double lambda = per_km2_to_per_m2(100.0);
    for (int k : ks) {
        SimulationPlan plan;
        plan.seed = seed + static_cast<std::uint64_t>(k);
        plan.realizations = realizations;
        EstimateWithError mc = simulate_beam_switch(lambda, k, plan);
        char label[48];
        std::snprintf(label, sizeof label, "beam switch probability (k=%d)", k);
        report.add(label, beam_switch_probability(k), mc.mean, mc.standard_error,
                   3.0 * mc.standard_error);
    }
    return report;
}

}  // namespace beamplan
