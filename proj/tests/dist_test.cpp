#include "uci/dist.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace uci {
namespace {

TEST(Entropy, SpikeUniformClosedForm) {
    // p1 = 1/2 with the uniform tail over 2^2 symbols has entropy exactly 2
    EXPECT_NEAR(entropy(Distribution::spike_uniform_of("0.5", 2)), 2.0, 1e-12);
    EXPECT_NEAR(entropy(Distribution::spike_uniform_of("0.5", 1)), 1.5, 1e-12);
    EXPECT_NEAR(entropy(Distribution::explicit_probs_of({1.0})), 0.0, 1e-15);
}

TEST(Entropy, FormulaMatchesBruteForce) {
    for (unsigned m = 1; m <= 12; ++m) {
        const char* p1_text = "0.9";
        double p1 = 0.9;
        std::vector<double> probs;
        probs.push_back(p1);
        double q = (1.0 - p1) / std::pow(2.0, m);
        for (std::uint64_t a = 0; a < (1ull << m); ++a) probs.push_back(q);
        double brute = 0.0;
        for (double p : probs) brute -= p * std::log2(p);
        EXPECT_NEAR(entropy(Distribution::spike_uniform_of(p1_text, m)), brute, 1e-11)
            << m;
    }
}

TEST(Entropy, HighPrecisionAgreesWithDouble) {
    precision_guard guard(50);
    Distribution d = Distribution::spike_uniform_of("0.98678557", 68);
    EXPECT_NEAR(static_cast<double>(entropy_hp(d)), entropy(d), 1e-12);
}

TEST(Distribution, Validation) {
    EXPECT_THROW(Distribution::explicit_probs_of({0.2, 0.8}), domain_error);  // increasing
    EXPECT_THROW(Distribution::explicit_probs_of({0.5, 0.4}), domain_error);  // sum != 1
    EXPECT_THROW(Distribution::explicit_probs_of({}), domain_error);
    EXPECT_THROW(Distribution::spike_uniform_of("0.1", 1), domain_error);  // not decreasing
    EXPECT_THROW(Distribution::spike_uniform_of("0", 4), domain_error);
    EXPECT_THROW(Distribution::geometric_of(1.5, 10), domain_error);
    EXPECT_THROW(Distribution::zipf_of(0.5, 10), domain_error);
    EXPECT_NO_THROW(Distribution::explicit_probs_of({0.5, 0.25, 0.25}));
    EXPECT_NO_THROW(Distribution::spike_uniform_of("0.5", 2));
    EXPECT_NO_THROW(Distribution::geometric_of(0.5, 100));
    EXPECT_NO_THROW(Distribution::zipf_of(2.0, 100));
}

TEST(SumLen, SpotValues) {
    EXPECT_EQ(sum_len(CodeId::delta, 1, 16), 102);
    for (std::uint64_t n : {1ull, 7ull, 100ull, 4096ull}) {
        EXPECT_EQ(sum_len(CodeId::alpha, 1, n), BigInt(n) * (n + 1) / 2);
    }
    EXPECT_THROW(sum_len(CodeId::delta, 5, 4), domain_error);
    EXPECT_THROW(sum_len(CodeId::delta, 0, 4), domain_error);
}

TEST(SumLen, BlockClosedFormMatchesBruteForce) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        CodeId code = all_codes[rng() % 6];
        std::uint64_t lo = 1 + rng() % 65536;
        std::uint64_t hi = lo + rng() % 4096;
        BigInt brute = 0;
        for (std::uint64_t a = lo; a <= hi; ++a) brute += code_length(code, a);
        ASSERT_EQ(sum_len(code, lo, hi), brute)
            << to_string(code) << " [" << lo << "," << hi << "]";
    }
    // a few full-width ranges
    for (CodeId code : {CodeId::gamma, CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
        BigInt brute = 0;
        for (std::uint64_t a = 1; a <= 65536; ++a) brute += code_length(code, a);
        EXPECT_EQ(sum_len(code, 1, 65536), brute);
    }
}

TEST(SumLen, WitnessMagnitudes) {
    BigInt s1 = sum_len(CodeId::delta_delta, 2, pow2(68) + 1);
    EXPECT_EQ(s1.str(), "23298237765090868658064");
    BigInt s2 = sum_len(CodeId::nu, 2, pow2(132) + 1);
    EXPECT_EQ(s2.str(), "789114808889656258085644336809020252716952");
}

TEST(AvgLen, SpotValues) {
    precision_guard guard(40);
    EXPECT_NEAR(static_cast<double>(avg_len(CodeId::delta,
                                            Distribution::explicit_probs_of({1.0}))),
                1.0, 1e-15);
    // gamma on the spike with m=1: lengths 1, 3, 3 at probs 1/2, 1/4, 1/4
    Real g = avg_len(CodeId::gamma, Distribution::spike_uniform_of("0.5", 1));
    EXPECT_EQ(g, Real(2));  // exact rational path
}

TEST(ExpansionRatio, DegenerateDistribution) {
    RatioReport rep =
        expansion_ratio(CodeId::nu, Distribution::explicit_probs_of({1.0}));
    EXPECT_NEAR(static_cast<double>(rep.ratio), 1.0, 1e-15);  // L(1)/max(1,0)
    EXPECT_FALSE(rep.exact_len_sum.has_value());
}

TEST(ExpansionRatio, WitnessDistributions) {
    RatioReport r1 = expansion_ratio(
        CodeId::delta_delta, Distribution::spike_uniform_of("0.98678557", 68), 40);
    EXPECT_GT(r1.ratio, Real("2.029899"));
    EXPECT_LT(r1.ratio, Real("2.0299"));
    ASSERT_TRUE(r1.exact_len_sum.has_value());
    EXPECT_EQ(r1.exact_len_sum->str(), "23298237765090868658064");

    RatioReport r2 = expansion_ratio(
        CodeId::nu, Distribution::spike_uniform_of("0.992886244", 132), 40);
    EXPECT_GT(r2.ratio, Real("2.023936"));
    EXPECT_LT(r2.ratio, Real("2.0239362"));
}

TEST(ExpansionRatio, AtLeastOneOnRandomInputs) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Distribution d = random_decreasing(seed, 1 + seed % 64);
        for (CodeId code : {CodeId::gamma, CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
            RatioReport rep = expansion_ratio(code, d);
            EXPECT_GE(static_cast<double>(rep.ratio), 1.0 - 1e-12);
        }
    }
}

TEST(PmLowerBound, SpotAndTrend) {
    EXPECT_DOUBLE_EQ(pm_lower_bound(2), 1.0);
    EXPECT_GT(pm_lower_bound(1 << 14), 1.99);
    EXPECT_LT(pm_lower_bound(1 << 14), 2.0);
    double prev = pm_lower_bound(2);
    for (std::uint64_t m : {3ull, 5ull, 10ull, 100ull, 10000ull, 1000000ull}) {
        double cur = pm_lower_bound(m);
        EXPECT_GT(cur, prev);
        prev = cur;
    }
    EXPECT_THROW(pm_lower_bound(1), domain_error);
}

TEST(RandomDecreasing, Contracts) {
    Distribution single = random_decreasing(0, 1);
    ASSERT_EQ(single.probs.size(), 1u);
    EXPECT_DOUBLE_EQ(single.probs[0], 1.0);

    Distribution a = random_decreasing(42, 64);
    Distribution b = random_decreasing(42, 64);
    EXPECT_EQ(a.probs, b.probs);  // deterministic per seed
    Distribution c = random_decreasing(43, 64);
    EXPECT_NE(a.probs, c.probs);

    double sum = 0.0;
    for (std::size_t i = 0; i < a.probs.size(); ++i) {
        EXPECT_GT(a.probs[i], 0.0);
        if (i) {
            EXPECT_LE(a.probs[i], a.probs[i - 1]);
        }
        sum += a.probs[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

}  // namespace
}  // namespace uci
