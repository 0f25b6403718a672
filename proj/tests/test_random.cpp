#include <gtest/gtest.h>

#include "beamplan/parallel.hpp"
#include "beamplan/random.hpp"

using namespace beamplan;

// Published known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
    auto out = philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out[0], 0x6627e8d5u);
    EXPECT_EQ(out[1], 0xe169c58du);
    EXPECT_EQ(out[2], 0xbc57ac4cu);
    EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerAllOnes) {
    auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out[0], 0x408f276du);
    EXPECT_EQ(out[1], 0x41c83b0eu);
    EXPECT_EQ(out[2], 0xa20bc7c6u);
    EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPiDigits) {
    auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out[0], 0xd16cfe09u);
    EXPECT_EQ(out[1], 0x94fdccebu);
    EXPECT_EQ(out[2], 0x5001e420u);
    EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RandomStream, ReproducibleAndStreamIndependent) {
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool any_diff_stream = false, any_diff_seed = false;
    for (int i = 0; i < 64; ++i) {
        auto va = a.next_u64();
        EXPECT_EQ(va, b.next_u64());
        any_diff_stream |= va != c.next_u64();
        any_diff_seed |= va != d.next_u64();
    }
    EXPECT_TRUE(any_diff_stream);
    EXPECT_TRUE(any_diff_seed);
}

TEST(RandomStream, Uniform01Range) {
    RandomStream rng(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // SE of the mean is 1/sqrt(12 n).
    EXPECT_NEAR(sum / n, 0.5, 3.0 / std::sqrt(12.0 * n));
}

TEST(RandomStream, ExponentialUnitMean) {
    RandomStream rng(2, 0);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.exponential(1.0);
    EXPECT_NEAR(sum / n, 1.0, 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(RandomStream, NakagamiPowerGainUnitMean) {
    // Unit-mean Gamma(m, 1/m) with m = 4: variance 1/m.
    RandomStream rng(3, 0);
    const int n = 200000;
    const double m = 4.0;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double g = rng.gamma(m, 1.0 / m);
        sum += g;
        sum_sq += g * g;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    EXPECT_NEAR(mean, 1.0, 3.0 * std::sqrt(1.0 / m / n));
    EXPECT_NEAR(var, 1.0 / m, 0.01);
}

TEST(RandomStream, GammaBelowOneShape) {
    RandomStream rng(4, 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.gamma(0.5, 2.0);  // mean 1
    EXPECT_NEAR(sum / n, 1.0, 3.0 * std::sqrt(2.0 / n));     // var = 0.5 * 4 = 2
    EXPECT_THROW(rng.gamma(0.0, 1.0), std::domain_error);
}

TEST(RandomStream, NormalMoments) {
    RandomStream rng(5, 0);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 3.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(sum_sq / n, 1.0, 0.02);
}

TEST(ParallelFor, CoversEveryIndexOnce) {
    std::vector<int> hits(10001, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (int h : hits) EXPECT_EQ(h, 1);
    parallel_for(0, [&](std::size_t) { FAIL(); }, 4);
}

TEST(ParallelFor, ThreadCountEnvOverride) {
    setenv("BEAMPLAN_THREADS", "3", 1);
    EXPECT_EQ(default_thread_count(), 3u);
    unsetenv("BEAMPLAN_THREADS");
    EXPECT_GE(default_thread_count(), 1u);
}
