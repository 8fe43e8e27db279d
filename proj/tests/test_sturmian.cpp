#include <gtest/gtest.h>

#include <boost/integer/common_factor_rt.hpp>
#include <cmath>

#include "sturmspec/sturmian.hpp"
#include "support.hpp"

using namespace sturmspec;
using testing_support::bin;
using testing_support::Gen;
using testing_support::naive_standard_words;

namespace {

/// Brute force: does every length-W window of text contain needle?
bool naive_every_window_contains(const std::string& text, const std::string& needle, std::size_t W) {
    for (std::size_t k = 0; k + W <= text.size(); ++k)
        if (text.substr(k, W).find(needle) == std::string::npos) return false;
    return true;
}

std::string cube_of(const std::string& s) { return s + s + s; }

} // namespace

TEST(ContinuedFraction, GoldenMeanConvergents) {
    ContinuedFraction cf({1, 1, 1, 1, 1});
    const std::vector<int> q{1, 1, 2, 3, 5, 8};
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(cf.q(n), q[n]);
    EXPECT_EQ(cf.convergent(5), Rational(5, 8));
    EXPECT_TRUE(cf.verify());
}

TEST(ContinuedFraction, SmallHandCases) {
    EXPECT_EQ(ContinuedFraction({2}).convergent(1), Rational(1, 2));
    ContinuedFraction cf({1, 2});
    EXPECT_EQ(cf.q(2), 3);
    EXPECT_EQ(cf.p(2), 2);
    EXPECT_EQ(cf.convergent(2), Rational(2, 3));
}

TEST(ContinuedFraction, RejectsZeroCoefficient) { EXPECT_THROW(ContinuedFraction({1, 0, 2}), Error); }

TEST(ContinuedFraction, ConvergentPropertiesOnRandomExpansions) {
    Gen g(21);
    for (int trial = 0; trial < 100; ++trial) {
        ContinuedFraction cf(g.cf(g.uniform(1, 40), 50));
        ASSERT_TRUE(cf.verify());
        for (std::size_t n = 1; n <= cf.depth(); ++n) {
            EXPECT_EQ(boost::integer::gcd(cf.p(n), cf.q(n)), 1);
            // p_n q_{n-1} - p_{n-1} q_n = (-1)^{n+1}
            const BigInt det = cf.p(n) * cf.q(n - 1) - cf.p(n - 1) * cf.q(n);
            EXPECT_EQ(det, n % 2 == 1 ? 1 : -1);
        }
    }
}

TEST(ContinuedFraction, BigDenominatorsAreExact) {
    // q_n of the golden mean is a Fibonacci number; q_90 overflows 64 bits only barely.
    ContinuedFraction cf(std::vector<std::uint64_t>(100, 1));
    BigInt a = 1, b = 1;
    for (std::size_t n = 2; n <= 100; ++n) {
        BigInt c = a + b;
        a = b;
        b = c;
        ASSERT_EQ(cf.q(n), b);
    }
    EXPECT_GT(cf.q(100), BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(CfList, ParsesRepeatsAndRejectsGarbage) {
    EXPECT_EQ(parse_cf_list("1,1,1x3"), (std::vector<std::uint64_t>{1, 1, 1, 1, 1}));
    EXPECT_EQ(parse_cf_list("2,3"), (std::vector<std::uint64_t>{2, 3}));
    EXPECT_EQ(format_cf_list({1, 1, 1, 2}), format_cf_list(parse_cf_list(format_cf_list({1, 1, 1, 2}))));
    EXPECT_THROW(parse_cf_list("1,,2"), Error);
    EXPECT_THROW(parse_cf_list("1,a"), Error);
    EXPECT_THROW(parse_cf_list("0"), Error);
}

TEST(CfSpec, UnrollsPeriodicExpansions) {
    CfSpec spec{{2}, {1, 3}};
    EXPECT_EQ(spec.unroll(6).coefficients(), (std::vector<std::uint64_t>{2, 1, 3, 1, 3, 1}));
    const auto cf = spec.until_denominator_exceeds(BigInt(1000));
    EXPECT_GT(cf.q(cf.depth()), 1000);
    EXPECT_LE(cf.q(cf.depth() - 1), 1000);
    EXPECT_THROW((CfSpec{{1, 2}, {}}.until_denominator_exceeds(BigInt(1000))), Error);
}

TEST(StandardWords, GoldenMeanHandValues) {
    const auto tower = standard_words(ContinuedFraction(std::vector<std::uint64_t>(5, 1)), 5);
    EXPECT_EQ(to_string(tower.s(3)), "101");
    EXPECT_EQ(to_string(tower.s(4)), "10110");
    EXPECT_EQ(to_string(tower.s(5)), "10110101");
    EXPECT_TRUE(tower.verify());
}

TEST(StandardWords, FirstLevel) {
    EXPECT_EQ(to_string(standard_words(ContinuedFraction({1, 3}), 1).s(1)), "1");
    EXPECT_EQ(to_string(standard_words(ContinuedFraction({2, 3}), 1).s(1)), "01");
    EXPECT_EQ(to_string(standard_words(ContinuedFraction({4}), 1).s(1)), "0001");
}

TEST(StandardWords, MatchNaiveStringConstruction) {
    Gen g(34);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = g.cf(g.uniform(1, 9), 4);
        const auto tower = standard_words(ContinuedFraction(a), a.size());
        const auto naive = naive_standard_words(a, a.size());
        for (long n = -1; n <= static_cast<long>(a.size()); ++n) {
            EXPECT_EQ(to_string(tower.s(n)), naive[static_cast<std::size_t>(n + 1)]);
            if (n >= 0) {
                EXPECT_EQ(BigInt(tower.s(n).size()), tower.cf().q(static_cast<std::size_t>(n)));
            }
        }
        EXPECT_TRUE(tower.verify());
    }
}

TEST(StandardWords, DepthBeyondExpansionIsAnError) {
    EXPECT_THROW(standard_words(ContinuedFraction({1, 1}), 3), Error);
    EXPECT_THROW(standard_words(ContinuedFraction({1, 1}), 2).s(3), Error);
}

TEST(CAlphaPrefix, GoldenMean) {
    const auto cf = CfSpec::golden_mean().unroll(30);
    EXPECT_EQ(to_string(c_alpha_prefix(cf, 8)), "10110101");
    EXPECT_EQ(to_string(c_alpha_prefix(cf, 1)), "1");
}

TEST(CAlphaPrefix, PrefixMonotoneOnRandomExpansions) {
    Gen g(55);
    for (int trial = 0; trial < 40; ++trial) {
        const auto cf = ContinuedFraction(g.cf(30, 4));
        for (std::size_t L : {1u, 3u, 17u, 200u, 5000u}) {
            const Word a = c_alpha_prefix(cf, L), b = c_alpha_prefix(cf, 2 * L);
            ASSERT_EQ(a.size(), L);
            EXPECT_TRUE(a.is_prefix_of(b));
        }
    }
}

TEST(CAlphaPrefix, AgreesWithRotationCoding) {
    // c_alpha(n) = 1 iff frac(n alpha) lies in [1 - alpha, 1).
    const long double alpha = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    const auto cf = CfSpec::golden_mean().until_denominator_exceeds(BigInt(5000));
    EXPECT_EQ(to_string(c_alpha_prefix(cf, 5000)), testing_support::naive_rotation_coding(alpha, 5000));

    const long double silver = std::sqrt(2.0L) - 1.0L; // [2, 2, 2, ...]
    const auto cf2 = CfSpec{{}, {2}}.until_denominator_exceeds(BigInt(5000));
    EXPECT_EQ(to_string(c_alpha_prefix(cf2, 5000)), testing_support::naive_rotation_coding(silver, 5000));
}

TEST(CAlphaPrefix, NeedsEnoughDepth) { EXPECT_THROW(c_alpha_prefix(ContinuedFraction({1, 1, 1}), 100), Error); }

TEST(ConjugationIdentity, GoldenMeanHandCase) {
    const auto check = verify_conjugation_identity(ContinuedFraction(std::vector<std::uint64_t>(12, 1)), 2);
    EXPECT_EQ(to_string(check.lhs), "10101");
    EXPECT_EQ(to_string(check.rhs), "10101");
    EXPECT_TRUE(check.equal);
}

TEST(ConjugationIdentity, GoldenMeanLevels) {
    const ContinuedFraction cf(std::vector<std::uint64_t>(12, 1));
    for (std::size_t n = 3; n <= 10; ++n) EXPECT_TRUE(verify_conjugation_identity(cf, n).equal) << n;
}

TEST(ConjugationIdentity, RandomExpansionsAgainstNaiveStrings) {
    Gen g(89);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = g.cf(10, 4);
        const auto s = naive_standard_words(a, a.size());
        auto S = [&](long n) { return s[static_cast<std::size_t>(n + 1)]; };
        for (std::size_t n = 2; n + 1 <= a.size(); ++n) {
            std::string rhs = S(static_cast<long>(n) + 1);
            for (std::uint64_t k = 1; k < a[n - 1]; ++k) rhs += S(static_cast<long>(n) - 1);
            rhs += S(static_cast<long>(n) - 2) + S(static_cast<long>(n) - 1);
            const auto check = verify_conjugation_identity(ContinuedFraction(a), n);
            EXPECT_EQ(to_string(check.lhs), S(static_cast<long>(n)) + S(static_cast<long>(n) + 1));
            EXPECT_EQ(to_string(check.rhs), rhs);
            EXPECT_TRUE(check.equal);
        }
    }
}

TEST(ConjugationIdentity, RequiresLevelTwo) {
    EXPECT_THROW(verify_conjugation_identity(ContinuedFraction({1, 1, 1}), 1), Error);
}

TEST(WindowCoverage, GoldenMeanLevelThree) {
    const auto cf = CfSpec::golden_mean().unroll(30);
    const auto r = window_coverage_check(cf, 3, 10'000);
    EXPECT_EQ(r.window_length, 21u);
    EXPECT_TRUE(r.all_windows_contain_cube);
    EXPECT_TRUE(naive_every_window_contains(to_string(c_alpha_prefix(cf, 10'000)), "101101101", 21));
}

TEST(WindowCoverage, GoldenMeanLevelFiveMatchesBruteForce) {
    // Brute force shows a 7 q_5 window without s_5^3; 8 q_5 windows all contain one.
    const auto cf = CfSpec::golden_mean().unroll(40);
    const std::string text = to_string(c_alpha_prefix(cf, 100'000));
    const std::string cube = cube_of(to_string(standard_words(cf, 5).s(5)));
    const auto seven = window_coverage_check(cf, 5, 100'000);
    EXPECT_EQ(seven.all_windows_contain_cube, naive_every_window_contains(text, cube, 56));
    EXPECT_FALSE(seven.all_windows_contain_cube);
    const auto eight = window_coverage_check(cf, 5, 100'000, 8);
    EXPECT_EQ(eight.all_windows_contain_cube, naive_every_window_contains(text, cube, 64));
    EXPECT_TRUE(eight.all_windows_contain_cube);
}

TEST(WindowCoverage, SixBlocksSufficeWhenNextCoefficientIsTwo) {
    const auto cf = CfSpec{{}, {1, 2}}.unroll(30);
    const std::string text = to_string(c_alpha_prefix(cf, 20'000));
    // Level 1 (q_1 = 1) needs 9 blocks; from level 2 on six suffice.
    for (std::size_t n = 2; n <= 6; ++n) {
        if (cf.a(n + 1) != 2) continue;
        const auto r = window_coverage_check(cf, n, 20'000);
        EXPECT_EQ(r.window_length, 6 * r.q);
        EXPECT_TRUE(r.all_windows_contain_cube) << n;
        EXPECT_TRUE(naive_every_window_contains(text, cube_of(to_string(standard_words(cf, n).s(n))), 6 * r.q));
    }
}

TEST(WindowCoverage, AgreesWithBruteForceOnRandomExpansions) {
    Gen g(144);
    for (int trial = 0; trial < 30; ++trial) {
        const auto cf = ContinuedFraction(g.cf(25, 3));
        const std::size_t n = g.uniform(1, 4);
        const std::size_t q = standard_words(cf, n).s(static_cast<long>(n)).size();
        const std::size_t prefix = std::max<std::size_t>(8 * q, 3000);
        const std::size_t mult = g.uniform(4, 8);
        const auto r = window_coverage_check(cf, n, prefix, mult);
        const std::string text = to_string(c_alpha_prefix(cf, prefix));
        EXPECT_EQ(r.all_windows_contain_cube,
                  naive_every_window_contains(text, cube_of(to_string(standard_words(cf, n).s(static_cast<long>(n)))), mult * q));
    }
}

TEST(WindowCoverage, PrefixTooShort) {
    EXPECT_THROW(window_coverage_check(CfSpec::golden_mean().unroll(30), 5, 50), Error);
}

TEST(CubeCoverage, ReportsMissingCube) {
    const auto r = cube_coverage(bin("0000000000").view(), bin("1"), 5);
    EXPECT_FALSE(r.all_windows_contain_cube);
    EXPECT_EQ(r.cube_occurrences, 0u);
    EXPECT_FALSE(r.worst_lead.has_value());
}
