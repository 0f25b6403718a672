#include <gtest/gtest.h>

#include <cstdlib>

#include "beamplan/coverage.hpp"
#include "beamplan/mobility.hpp"
#include "beamplan/montecarlo.hpp"

using namespace beamplan;

namespace {

Scenario sirAlpha4Scenario() {
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
    return s;
}

SimulationPlan quickPlan(std::uint64_t seed, std::size_t n) {
    SimulationPlan plan;
    plan.seed = seed;
    plan.realizations = n;
    return plan;
}

}  // namespace

TEST(PlanValidation, RejectsBadPlans) {
    SimulationPlan plan;
    plan.realizations = 0;
    EXPECT_THROW(validate(plan), std::invalid_argument);
    plan = SimulationPlan{};
    plan.window_radius_factor = 2.0;
    EXPECT_THROW(validate(plan), std::invalid_argument);
    plan = SimulationPlan{};
    plan.fading = Fading::nakagami(-1.0);
    EXPECT_THROW(validate(plan), std::invalid_argument);
}

TEST(CoverageSimulation, DeterministicForFixedSeed) {
    Preset p = preset("FR2-125");
    auto a = simulate_coverage(p.scenario, BeamConfig(4, 1), GainModel::standard(), p.mobility,
                               5.0, quickPlan(99, 4000));
    auto b = simulate_coverage(p.scenario, BeamConfig(4, 1), GainModel::standard(), p.mobility,
                               5.0, quickPlan(99, 4000));
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.standard_error, b.standard_error);
    auto c = simulate_coverage(p.scenario, BeamConfig(4, 1), GainModel::standard(), p.mobility,
                               5.0, quickPlan(100, 4000));
    EXPECT_NE(a.mean, c.mean);
}

TEST(CoverageSimulation, ThreadCountDoesNotChangeResults) {
    Preset p = preset("FR2-75");
    setenv("BEAMPLAN_THREADS", "1", 1);
    auto serial = simulate_coverage(p.scenario, BeamConfig(5, 0), GainModel::standard(),
                                    p.mobility, 2.0, quickPlan(7, 3000));
    setenv("BEAMPLAN_THREADS", "4", 1);
    auto parallel = simulate_coverage(p.scenario, BeamConfig(5, 0), GainModel::standard(),
                                      p.mobility, 2.0, quickPlan(7, 3000));
    unsetenv("BEAMPLAN_THREADS");
    EXPECT_EQ(serial.mean, parallel.mean);
    EXPECT_EQ(serial.standard_error, parallel.standard_error);
}

TEST(CoverageSimulation, CertainAtVanishingThreshold) {
    Preset p = preset("FR2-75");
    auto est = simulate_coverage(p.scenario, BeamConfig(3, 0), GainModel::standard(), p.mobility,
                                 1e-15, quickPlan(3, 2000));
    EXPECT_DOUBLE_EQ(est.mean, 1.0);
    EXPECT_DOUBLE_EQ(est.standard_error, 0.0);
    EXPECT_EQ(est.sample_count, 2000u);
}

TEST(CoverageSimulation, MatchesClosedFormSirAlphaFour) {
    Scenario s = sirAlpha4Scenario();
    MobilityProfile still;
    still.speed_mps = 0.0;  // no misalignment; gains are unit anyway
    for (double beta : {0.1, 1.0, 10.0}) {
        auto est = simulate_coverage(s, BeamConfig(1, 0), GainModel::isotropic(), still, beta,
                                     quickPlan(1234, 40000));
        double expected = 1.0 / (1.0 + std::sqrt(beta) * std::atan(std::sqrt(beta)));
        EXPECT_NEAR(est.mean, expected, 3.0 * est.standard_error + 0.003) << "beta " << beta;
    }
}

TEST(CoverageSimulation, AgreesWithAnalyticMixture) {
    Preset p = preset("FR2-75");
    BeamConfig config(6, 1);
    double lambda = p.scenario.bs_intensity_per_m2;
    CoverageQuery q{p.scenario, config, GainModel::standard(),
                    misalignment_prob_bs(6, lambda, p.mobility.speed_mps, 0.02),
                    misalignment_prob_mt(1, lambda, p.mobility.speed_mps, 0.02), 10.0};
    double analytic = success_probability(q);
    auto mc = simulate_coverage(p.scenario, config, GainModel::standard(), p.mobility, 10.0,
                                quickPlan(4242, 30000));
    EXPECT_NEAR(mc.mean, analytic, 3.0 * mc.standard_error + 0.005);
}

TEST(CoverageSimulation, PinnedServingGainMatchesConditional) {
    Preset p = preset("FR2-75");
    BeamConfig config(4, 0);
    double g0 = 16.0;  // aligned serving gain at n = 4, omni MT
    CoverageQuery q{p.scenario, config, GainModel::standard(), 0.0, 0.0, 1.0};
    double analytic = conditional_success_q(q, g0);
    auto mc = simulate_coverage(p.scenario, config, GainModel::standard(), p.mobility, 1.0,
                                quickPlan(777, 30000), g0);
    EXPECT_NEAR(mc.mean, analytic, 0.01);
}

TEST(CoverageSimulation, WindowDoublingShiftsLessThanOneSigma) {
    Preset p = preset("FR2-75");
    SimulationPlan narrow = quickPlan(31, 10000);
    SimulationPlan wide = narrow;
    wide.window_radius_factor = 30.0;
    auto a = simulate_coverage(p.scenario, BeamConfig(4, 0), GainModel::standard(), p.mobility,
                               1.0, narrow);
    auto b = simulate_coverage(p.scenario, BeamConfig(4, 0), GainModel::standard(), p.mobility,
                               1.0, wide);
    EXPECT_LE(std::abs(a.mean - b.mean), a.standard_error);
}

TEST(RateSimulation, AgreesWithAnalyticRate) {
    Preset p = preset("FR2-75");
    BeamConfig config(6, 0);
    double lambda = p.scenario.bs_intensity_per_m2;
    QuadratureSettings quick;
    quick.relative_tolerance = 1e-5;
    double analytic = ergodic_rate(p.scenario, config, GainModel::standard(),
                                   misalignment_prob_bs(6, lambda, p.mobility.speed_mps, 0.02),
                                   misalignment_prob_mt(0, lambda, p.mobility.speed_mps, 0.02),
                                   quick);
    auto mc = simulate_rate(p.scenario, config, GainModel::standard(), p.mobility,
                            quickPlan(5150, 30000));
    EXPECT_NEAR(mc.mean, analytic, std::max(3.0 * mc.standard_error, 0.01 * analytic));
}

TEST(RateSimulation, SaturatedSamplesGiveLogCapAndZeroCapGivesZero) {
    // Interference- and noise-free stub: every sample sits above the cap.
    SinrBatch batch;
    batch.samples.assign(100, SinrSample{1e30, 10.0, 4.0, true});
    auto est = rate_from_samples(batch, 400e6, 1000.0);
    double expected = 400e6 * std::log1p(1000.0);
    EXPECT_NEAR(est.mean, expected, 1e-12 * expected);
    EXPECT_LE(est.standard_error, 1e-6);
    auto zero_cap = rate_from_samples(batch, 400e6, 0.0);
    EXPECT_DOUBLE_EQ(zero_cap.mean, 0.0);
}

TEST(RateSimulation, NakagamiKeepsSameOrderOfMagnitude) {
    // The Nakagami-4 LOS variant must stay in the same ballpark as
    // Rayleigh (the published comparison shows matching trends).
    Preset p = preset("FR2-75");
    BeamConfig config(5, 1);
    SimulationPlan ray = quickPlan(61, 20000);
    SimulationPlan naka = ray;
    naka.fading = Fading::nakagami(4.0);
    auto r = simulate_rate(p.scenario, config, GainModel::standard(), p.mobility, ray);
    auto n = simulate_rate(p.scenario, config, GainModel::standard(), p.mobility, naka);
    EXPECT_NEAR(n.mean / r.mean, 1.0, 0.15);
}

TEST(CrossingSimulation, MatchesTheoreticalIntensities) {
    double lambda = per_km2_to_per_m2(100.0);
    auto rates = simulate_crossings(lambda, 4, 2000.0, quickPlan(8, 1500));
    double cell_expected = 4.0 * std::sqrt(lambda) / pi;
    double beam_expected = 16.0 * std::sqrt(lambda) / pi;
    EXPECT_NEAR(rates.cell_per_m.mean, cell_expected, 0.05 * cell_expected);
    EXPECT_NEAR(rates.beam_per_m.mean, beam_expected, 0.05 * beam_expected);
}

TEST(CrossingSimulation, RejectsShortTrajectories) {
    EXPECT_THROW(simulate_crossings(1e-4, 4, 100.0, quickPlan(1, 10)), std::invalid_argument);
}

TEST(BeamSwitchSimulation, MatchesAnalyticProbability) {
    double lambda = per_km2_to_per_m2(100.0);
    for (int k : {1, 2}) {
        auto est = simulate_beam_switch(lambda, k, quickPlan(17 + k, 20000));
        EXPECT_NEAR(est.mean, beam_switch_probability(k), 4.0 * est.standard_error)
            << "k = " << k;
    }
}

TEST(BeamSwitchSimulation, ApproachesOneForNarrowSectors) {
    auto est = simulate_beam_switch(per_km2_to_per_m2(100.0), 6, quickPlan(33, 20000));
    EXPECT_GT(est.mean, 0.99);
}

TEST(BeamSwitchSimulation, RequiresDirectionalMt) {
    EXPECT_THROW(simulate_beam_switch(1e-4, 0, quickPlan(1, 10)), std::invalid_argument);
}

TEST(SampleBatch, CarriesDumpFields) {
    Preset p = preset("FR2-75");
    auto batch = simulate_sinr_samples(p.scenario, BeamConfig(4, 1), GainModel::standard(),
                                       p.mobility, quickPlan(3, 500));
    ASSERT_EQ(batch.samples.size(), 500u);
    for (const auto& s : batch.samples) {
        EXPECT_GT(s.sinr, 0.0);
        EXPECT_GT(s.serving_distance_m, 0.0);
        EXPECT_GT(s.serving_gain, 0.0);
        if (s.los) {
            EXPECT_LT(s.serving_distance_m, 75.0);
        }
    }
    EXPECT_EQ(batch.resampled, 0u);
}

TEST(SampleBatch, ServingDistanceDistributionIsRayleighLike) {
    // P(R > r) = exp(-lambda pi r^2); check the median.
    Preset p = preset("FR2-250");
    auto batch = simulate_sinr_samples(p.scenario, BeamConfig(2, 0), GainModel::standard(),
                                       p.mobility, quickPlan(21, 20000));
    double lambda = p.scenario.bs_intensity_per_m2;
    double median_expected = std::sqrt(std::log(2.0) / (lambda * pi));
    std::size_t below = 0;
    for (const auto& s : batch.samples) below += s.serving_distance_m < median_expected;
    double frac = static_cast<double>(below) / batch.samples.size();
    EXPECT_NEAR(frac, 0.5, 3.0 * std::sqrt(0.25 / batch.samples.size()));
}
