// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run everything, one criterion (--criterion N), or --list.
//
//  1  beam-switch probability, analytic values and simulation agreement
//  2  cell/beam boundary crossing intensities vs line-crossing simulation
//  3  quadrature engine vs the alpha = 4 Rayleigh SIR closed form
//  4  analytic vs Monte Carlo coverage over randomized queries
//  5  single-MT optimal BS beam counts per deployment preset
//  6  two-dimensional (n, k) optima per overhead model
//  7  heterogeneous-mix peak effective ASE, limited and full overhead
//  8  always-on property suites over randomized cases
//  9  full-overhead k = 2 vs k = 1 crossover along the BS beam axis

#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "beamplan/beamplan.hpp"

using namespace beamplan;

namespace {

struct Check {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

bool expect(bool ok, std::string& detail, const std::string& what) {
    if (!ok) detail += "    FAILED: " + what + "\n";
    return ok;
}

// --- criterion 1 -----------------------------------------------------------
bool criterion_beam_switch(std::string& detail) {
    bool ok = true;
    const double published[] = {0.637, 0.900, 0.975};
    for (int k = 1; k <= 3; ++k) {
        double analytic = beam_switch_probability(k);
        char buf[128];
        std::snprintf(buf, sizeof buf, "analytic p_sw(k=%d) = %.4f vs %.3f", k, analytic,
                      published[k - 1]);
        detail += std::string("    ") + buf + "\n";
        ok &= expect(std::abs(analytic - published[k - 1]) <= 1e-3, detail, buf);

        SimulationPlan plan;
        plan.seed = 20 + static_cast<std::uint64_t>(k);
        plan.realizations = 100000;
        EstimateWithError mc = simulate_beam_switch(per_km2_to_per_m2(100.0), k, plan);
        std::snprintf(buf, sizeof buf, "simulated p_sw(k=%d) = %.4f (se %.4f)", k, mc.mean,
                      mc.standard_error);
        detail += std::string("    ") + buf + "\n";
        ok &= expect(std::abs(mc.mean - analytic) <= 3.0 * mc.standard_error, detail, buf);
    }
    return ok;
}

// --- criterion 2 -----------------------------------------------------------
bool criterion_crossings(std::string& detail) {
    ValidationReport report = validate_crossings(100.0, 10000, 2, {1, 4, 6}, 0.02);
    for (const auto& row : report.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: analytic %.6g simulated %.6g (se %.2g)",
                      row.label.c_str(), row.analytic, row.simulated, row.standard_error);
        detail += std::string("    ") + buf + "\n";
    }
    return expect(report.all_pass, detail, "crossing intensities within 2% relative");
}

// --- criterion 3 -----------------------------------------------------------
bool criterion_closed_form(std::string& detail) {
    Scenario s;
    s.carrier_frequency_hz = 2e9;
    s.bandwidth_hz = 10e6;
    s.noise_density_w_per_hz = 0.0;
    s.tx_power_w = 1.0;
    s.bs_intensity_per_m2 = isd_to_intensity(200.0);
    s.alpha_los = 4.0;
    s.alpha_nlos = 4.0;
    s.los_ball_radius_m.reset();
    s.sinr_cap_linear = 1e6;

    bool ok = true;
    for (double beta : {0.1, 1.0, 10.0}) {
        CoverageQuery q{s, BeamConfig(1, 0), GainModel::isotropic(), 0.0, 0.0, beta};
        double engine = success_probability(q);
        double exact = 1.0 / (1.0 + std::sqrt(beta) * std::atan(std::sqrt(beta)));
        char buf[128];
        std::snprintf(buf, sizeof buf, "beta %.1f: engine %.7f closed form %.7f (|d| %.2g)", beta,
                      engine, exact, std::abs(engine - exact));
        detail += std::string("    ") + buf + "\n";
        ok &= expect(std::abs(engine - exact) <= 1e-4, detail, buf);
    }
    return ok;
}

// --- criterion 4 -----------------------------------------------------------
bool criterion_coverage_vs_mc(std::string& detail) {
    ValidationReport report = validate_coverage(20, 100000, 3, {1.0, 10.0, 100.0});
    std::size_t shown = 0;
    for (const auto& row : report.rows) {
        if (!row.pass || shown < 6) {
            char buf[192];
            std::snprintf(buf, sizeof buf, "%s: analytic %.5f mc %.5f (tol %.5f)%s",
                          row.label.c_str(), row.analytic, row.simulated, row.tolerance,
                          row.pass ? "" : "  <-- FAIL");
            detail += std::string("    ") + buf + "\n";
            ++shown;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu/%zu query points within 3 SE + 0.005",
                  static_cast<std::size_t>(
                      std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const ValidationRow& r) { return r.pass; })),
                  report.rows.size());
    detail += std::string("    ") + buf + "\n";
    return expect(report.all_pass, detail, "analytic-vs-MC coverage agreement");
}

// --- criteria 5/6 helpers ----------------------------------------------------
bool optimum_matches(const Optimum& opt, int paper_n, int paper_k, bool check_n, bool check_k,
                     std::string& detail, const std::string& label) {
    // +-1 exponent tolerance, and the published point must lie within 1%
    // of the curve maximum.
    bool ok = true;
    double at_paper = std::nan("");
    for (const auto& pt : opt.full_curve)
        if ((!check_n || pt.n == paper_n) && (!check_k || pt.k == paper_k))
            at_paper = std::isnan(at_paper) ? pt.value : std::max(at_paper, pt.value);
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "%s: best (n=%d, k=%d) value %.6g; published point value %.6g (%.2f%% of max)",
                  label.c_str(), opt.best_n, opt.best_k, opt.best_value, at_paper,
                  100.0 * at_paper / opt.best_value);
    detail += std::string("    ") + buf + "\n";
    if (check_n) ok &= expect(std::abs(opt.best_n - paper_n) <= 1, detail, label + ": |n* - paper| <= 1");
    if (check_k) ok &= expect(std::abs(opt.best_k - paper_k) <= 1, detail, label + ": |k* - paper| <= 1");
    ok &= expect(at_paper >= 0.99 * opt.best_value, detail,
                 label + ": published point within 1% of curve maximum");
    return ok;
}

bool criterion_paper_optima(std::string& detail) {
    QuadratureSettings quad;
    quad.relative_tolerance = 1e-6;  // tight enough that the verdict cannot be quadrature noise
    bool ok = true;
    const std::pair<const char*, int> cases[] = {
        {"FR1-250", 8}, {"FR2-125", 7}, {"FR2-75", 6}};
    for (const auto& [name, n_star] : cases) {
        Preset p = preset(name);
        Optimum opt = optimal_n(0, p.scenario, p.mobility, GainModel::standard(), {1, 12}, quad);
        ok &= optimum_matches(opt, n_star, 0, true, false, detail, name);
    }
    return ok;
}

bool criterion_2d_optima(std::string& detail) {
    QuadratureSettings quad;
    quad.relative_tolerance = 1e-5;
    Preset p = preset("FR2-250");
    p.scenario.bs_intensity_per_m2 = isd_to_intensity(200.0);
    bool ok = true;

    p.mobility.overhead_mode = OverheadMode::Limited;
    Optimum limited = optimal_nk(p.scenario, p.mobility, GainModel::standard(), {1, 12}, {0, 9},
                                 quad);
    ok &= optimum_matches(limited, 6, 8, true, true, detail, "limited overhead (64 BS, 256 MT)");

    p.mobility.overhead_mode = OverheadMode::Full;
    Optimum full = optimal_nk(p.scenario, p.mobility, GainModel::standard(), {1, 12}, {0, 9},
                              quad);
    ok &= optimum_matches(full, 0, 2, false, true, detail, "full overhead (4 MT beams)");
    return ok;
}

// --- criterion 7 -----------------------------------------------------------
bool criterion_mixed_peaks(std::string& detail) {
    QuadratureSettings quad;
    quad.relative_tolerance = 1e-5;
    Preset p = preset("FR2-250");
    p.scenario.bs_intensity_per_m2 = isd_to_intensity(200.0);
    bool ok = true;

    struct Case {
        OverheadMode mode;
        double peak_report_units;
        int peak_n;
        const char* label;
    };
    const Case cases[] = {{OverheadMode::Limited, 142.3, 9, "limited overhead"},
                          {OverheadMode::Full, 137.9, 8, "full overhead"}};
    for (const auto& c : cases) {
        MtMix mix{{{0.6, 0, c.mode}, {0.3, 1, c.mode}, {0.1, 2, c.mode}},
                  {{0.6, kmh_to_mps(3.0)}, {0.4, kmh_to_mps(30.0)}}};
        double best = -1.0;
        int best_n = 0;
        std::vector<double> curve(12);
        parallel_for(curve.size(), [&](std::size_t i) {
            curve[i] = mixed_effective_ase(mix, static_cast<int>(i) + 1, p.scenario,
                                           GainModel::standard(), p.mobility.ssb_period_s,
                                           p.mobility.beam_reselect_delay_s,
                                           p.mobility.cell_handover_delay_s, quad);
        });
        for (int n = 1; n <= 12; ++n) {
            if (curve[n - 1] > best) {
                best = curve[n - 1];
                best_n = n;
            }
        }
        double peak = effective_ase_to_report_units(best, p.scenario.bandwidth_hz);
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s: peak %.1f nats/s/Hz/km^2 at n=%d (published %.1f near n=%d)", c.label,
                      peak, best_n, c.peak_report_units, c.peak_n);
        detail += std::string("    ") + buf + "\n";
        ok &= expect(std::abs(peak - c.peak_report_units) <= 0.02 * c.peak_report_units, detail,
                     std::string(c.label) + ": peak within 2%");
        ok &= expect(std::abs(best_n - c.peak_n) <= 1, detail,
                     std::string(c.label) + ": peak location near published exponent");
    }
    return ok;
}

// --- criterion 8 -----------------------------------------------------------
bool criterion_property_suites(std::string& detail) {
    bool ok = true;
    std::size_t cases = 0;
    RandomStream rng(2024, 0);

    // Gain pmf normalization (300 cases).
    for (int i = 0; i < 300; ++i, ++cases) {
        BeamConfig config(1 + static_cast<int>(rng.uniform(0.0, 10.0)),
                          static_cast<int>(rng.uniform(0.0, 10.0)));
        auto intf = interferer_gain_pmf(config);
        auto serv = serving_gain_pmf(config, rng.uniform01(), rng.uniform01());
        ok &= expect(std::abs(intf.total_probability() - 1.0) <= 1e-12, detail,
                     "interferer pmf normalization");
        ok &= expect(std::abs(serv.total_probability() - 1.0) <= 1e-12, detail,
                     "serving pmf normalization");
        if (!ok) break;
    }

    // Overhead mode ordering (300 cases).
    for (int i = 0; ok && i < 300; ++i, ++cases) {
        int n = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
        int k = static_cast<int>(rng.uniform(0.0, 10.0));
        double lambda = isd_to_intensity(rng.uniform(20.0, 1500.0));
        double v = rng.uniform(0.0, 90.0);
        double tau = rng.uniform(1e-3, 0.3);
        double tb = rng.uniform(0.0, 0.1), tc = rng.uniform(0.0, 0.1);
        double lim = total_overhead(OverheadMode::Limited, n, k, lambda, v, tau, tb, tc);
        double prob = total_overhead(OverheadMode::Probabilistic, n, k, lambda, v, tau, tb, tc);
        double full = total_overhead(OverheadMode::Full, n, k, lambda, v, tau, tb, tc);
        ok &= expect(lim <= prob + 1e-15 && prob <= full + 1e-15, detail,
                     "overhead ordering limited <= probabilistic <= full");
    }

    // Misalignment monotonicity (200 cases).
    for (int i = 0; ok && i < 200; ++i, ++cases) {
        int n = 1 + static_cast<int>(rng.uniform(0.0, 9.0));
        double lambda = isd_to_intensity(rng.uniform(20.0, 1500.0));
        double v = rng.uniform(0.0, 80.0), tau = rng.uniform(1e-3, 0.3);
        double p = misalignment_prob_bs(n, lambda, v, tau);
        ok &= expect(p >= 0.0 && p < 1.0, detail, "misalignment in [0, 1)");
        ok &= expect(p <= misalignment_prob_bs(n + 1, lambda, v, tau) &&
                         p <= misalignment_prob_bs(n, 2.0 * lambda, v, tau) &&
                         p <= misalignment_prob_bs(n, lambda, v + 5.0, tau) &&
                         p <= misalignment_prob_bs(n, lambda, v, tau * 1.5),
                     detail, "misalignment monotonicity");
    }

    // Success-probability monotonicity in beta, P, sigma^2 (100 cases).
    QuadratureSettings quick;
    quick.relative_tolerance = 1e-6;
    for (int i = 0; ok && i < 100; ++i, ++cases) {
        Preset p = preset(preset_names()[static_cast<std::size_t>(rng.uniform(0.0, 6.0)) % 6]);
        CoverageQuery q{p.scenario,
                        BeamConfig(1 + static_cast<int>(rng.uniform(0.0, 7.0)),
                                   static_cast<int>(rng.uniform(0.0, 3.0))),
                        GainModel::standard(), rng.uniform01() * 0.4, rng.uniform01() * 0.4,
                        std::pow(10.0, rng.uniform(-1.0, 2.0))};
        double base = success_probability(q, quick);
        CoverageQuery harder = q;
        harder.threshold *= 2.5;
        CoverageQuery stronger = q;
        stronger.scenario.tx_power_w *= 5.0;
        CoverageQuery noisier = q;
        noisier.scenario.noise_density_w_per_hz *= 50.0;
        ok &= expect(success_probability(harder, quick) <= base + 1e-5, detail,
                     "p_s nonincreasing in beta");
        ok &= expect(success_probability(stronger, quick) >= base - 1e-5, detail,
                     "p_s nondecreasing in P");
        ok &= expect(success_probability(noisier, quick) <= base + 1e-5, detail,
                     "p_s nonincreasing in sigma^2");
    }

    // Argmax scale invariance (50 cases).
    QuadratureSettings coarse;
    coarse.relative_tolerance = 1e-3;
    for (int i = 0; ok && i < 50; ++i, ++cases) {
        Preset p = preset(preset_names()[static_cast<std::size_t>(rng.uniform(0.0, 6.0)) % 6]);
        p.mobility.speed_mps = kmh_to_mps(rng.uniform01() < 0.5 ? 3.0 : 30.0);
        auto base = optimal_n(0, p.scenario, p.mobility, GainModel::standard(), {1, 5}, coarse);
        Scenario scaled = p.scenario;
        double factor = std::pow(10.0, rng.uniform(-1.0, 1.0));
        scaled.bandwidth_hz *= factor;
        scaled.noise_density_w_per_hz /= factor;  // keeps sigma^2, i.e. p_s, unchanged
        auto wide = optimal_n(0, scaled, p.mobility, GainModel::standard(), {1, 5}, coarse);
        ok &= expect(base.best_n == wide.best_n, detail, "argmax scale invariance");
    }

    // Monte Carlo determinism under a fixed seed (50 cases).
    for (int i = 0; ok && i < 50; ++i, ++cases) {
        Preset p = preset(preset_names()[static_cast<std::size_t>(rng.uniform(0.0, 6.0)) % 6]);
        BeamConfig config(1 + static_cast<int>(rng.uniform(0.0, 6.0)),
                          static_cast<int>(rng.uniform(0.0, 3.0)));
        SimulationPlan plan;
        plan.seed = 500 + static_cast<std::uint64_t>(i);
        plan.realizations = 500;
        double beta = std::pow(10.0, rng.uniform(-0.5, 1.5));
        auto a = simulate_coverage(p.scenario, config, GainModel::standard(), p.mobility, beta,
                                   plan);
        auto b = simulate_coverage(p.scenario, config, GainModel::standard(), p.mobility, beta,
                                   plan);
        ok &= expect(a.mean == b.mean && a.standard_error == b.standard_error, detail,
                     "MC determinism under fixed seed");
    }

    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu randomized cases, zero failures required", cases);
    detail += std::string("    ") + buf + "\n";
    ok &= expect(cases >= 1000, detail, "at least 1000 randomized cases");
    return ok;
}

// --- criterion 9 -----------------------------------------------------------
bool criterion_crossover(std::string& detail) {
    QuadratureSettings quad;
    quad.relative_tolerance = 1e-5;
    Preset p = preset("FR2-75");
    p.mobility.overhead_mode = OverheadMode::Full;
    auto ase = [&](int n, int k) {
        return effective_ase(p.scenario, BeamConfig(n, k), p.mobility, GainModel::standard(),
                             quad);
    };
    bool ok = true;
    std::vector<double> diff(11, 0.0);
    for (int n = 4; n <= 10; ++n) {
        diff[static_cast<std::size_t>(n)] = ase(n, 2) - ase(n, 1);
        char buf[96];
        std::snprintf(buf, sizeof buf, "n=%d: ASE(k=2) - ASE(k=1) = %+.4g", n,
                      diff[static_cast<std::size_t>(n)]);
        detail += std::string("    ") + buf + "\n";
    }
    ok &= expect(diff[5] > 0.0, detail, "k=2 beats k=1 at 2^5 BS beams");
    ok &= expect(diff[6] < 0.0 && diff[7] < 0.0, detail, "k=2 loses from 2^6 beams");
    for (int n = 8; n <= 10; ++n)
        ok &= expect(diff[static_cast<std::size_t>(n)] <= 0.0, detail,
                     "no re-crossing at large n");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Check> checks = {
        {1, "beam-switch probabilities (analytic + simulation)", criterion_beam_switch},
        {2, "boundary-crossing intensities vs simulation", criterion_crossings},
        {3, "quadrature vs alpha=4 Rayleigh SIR closed form", criterion_closed_form},
        {4, "analytic vs Monte Carlo coverage (randomized queries)", criterion_coverage_vs_mc},
        {5, "optimal BS beam counts per deployment preset", criterion_paper_optima},
        {6, "two-dimensional (n, k) optima per overhead model", criterion_2d_optima},
        {7, "heterogeneous-mix peak effective ASE", criterion_mixed_peaks},
        {8, "always-on property suites (1000 randomized cases)", criterion_property_suites},
        {9, "full-overhead k=2 vs k=1 crossover", criterion_crossover},
    };

    int selected = 0;
    bool verbose = true;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : checks) std::printf("%d  %s\n", c.id, c.name.c_str());
            return 0;
        } else if (std::strcmp(argv[i], "--quiet") == 0) {
            verbose = false;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N] [--list] [--quiet]\n", argv[0]);
            return 1;
        }
    }

    int failures = 0;
    for (const auto& check : checks) {
        if (selected != 0 && check.id != selected) continue;
        std::string detail;
        bool pass = false;
        try {
            pass = check.run(detail);
        } catch (const std::exception& e) {
            detail += std::string("    exception: ") + e.what() + "\n";
        }
        std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", check.id,
                    check.name.c_str());
        if (verbose && !detail.empty()) std::fputs(detail.c_str(), stdout);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
