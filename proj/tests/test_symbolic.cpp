#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sturmspec/sturmian.hpp"
#include "support.hpp"

using namespace sturmspec;
using testing_support::bin;
using testing_support::Gen;
using testing_support::letters;

namespace {

std::string fmt(const std::pair<Substitution, Alphabet>& s, const Word& w) { return s.second.format(w); }

} // namespace

TEST(Substitute, FibonacciTwice) {
    auto fib = named_substitution("fibonacci");
    EXPECT_EQ(fmt(fib, substitute(fib.first, fib.second.parse("a"), 2)), "aba");
}

TEST(Substitute, ThueMorseTwice) {
    auto tm = named_substitution("thue-morse");
    EXPECT_EQ(fmt(tm, substitute(tm.first, tm.second.parse("a"), 2)), "abba");
}

TEST(Substitute, ImageStartingWithSeedKeepsSeedFirst) {
    for (const auto& [name, _] : substitution_registry()) {
        auto s = named_substitution(name);
        auto out = substitute(s.first, s.second.parse("a"), 1);
        ASSERT_FALSE(out.empty());
        EXPECT_EQ(out[0], 0) << name;
    }
}

TEST(Substitute, IsAHomomorphism) {
    Gen g(11);
    auto rs = named_substitution("rudin-shapiro");
    for (int trial = 0; trial < 50; ++trial) {
        const Word u = g.word(g.uniform(1, 12), 4), v = g.word(g.uniform(1, 12), 4);
        EXPECT_EQ(substitute(rs.first, u + v), substitute(rs.first, u) + substitute(rs.first, v));
    }
}

TEST(Substitute, RejectsSymbolsOutsideAlphabet) {
    auto fib = named_substitution("fibonacci");
    EXPECT_THROW(substitute(fib.first, letters("abc", 3)), Error);
    EXPECT_THROW(substitute(fib.first, fib.second.parse("a"), 0), Error);
}

TEST(ParseSubstitution, RoundTripsAndRejectsGarbage) {
    auto s = parse_substitution("a:ab,b:a");
    EXPECT_EQ(format_substitution(s.first, s.second), "a:ab,b:a");
    EXPECT_THROW(parse_substitution("a:ab,b:"), Error);
    EXPECT_THROW(parse_substitution("a:ac"), Error);
    EXPECT_THROW(named_substitution("no-such-thing"), Error);
}

TEST(Primitivity, RegistryEntriesArePrimitive) {
    for (const auto& [name, _] : substitution_registry()) EXPECT_GT(named_substitution(name).first.primitivity_power(), 0u) << name;
    EXPECT_EQ(parse_substitution("a:aa,b:ab").first.primitivity_power(), 0u);
}

TEST(FixedPoint, FibonacciPrefix) {
    auto fib = named_substitution("fibonacci");
    auto w = fixed_point_prefix(fib.first, 0, 5);
    EXPECT_EQ(fmt(fib, w).substr(0, 5), "abaab");
}

TEST(FixedPoint, PeriodDoublingPrefix) {
    auto pd = named_substitution("period-doubling");
    EXPECT_EQ(fmt(pd, fixed_point_prefix(pd.first, 0, 4)).substr(0, 4), "abaa");
}

TEST(FixedPoint, PrefixMonotone) {
    for (const auto& [name, _] : substitution_registry()) {
        auto s = named_substitution(name);
        for (std::size_t L : {1u, 7u, 64u, 1000u}) {
            const Word a = fixed_point_prefix(s.first, 0, L), b = fixed_point_prefix(s.first, 0, 2 * L);
            ASSERT_GE(a.size(), L);
            EXPECT_TRUE(a.slice(0, L).is_prefix_of(b)) << name << " L=" << L;
        }
    }
}

TEST(FixedPoint, IsFixedBySubstitution) {
    auto tm = named_substitution("thue-morse");
    const Word u = fixed_point_prefix(tm.first, 0, 512);
    const Word image = substitute(tm.first, u.slice(0, 256));
    EXPECT_TRUE(u.slice(0, 512).is_prefix_of(image) || image.is_prefix_of(u));
}

TEST(FixedPoint, RejectsSeedWithoutFixedPoint) {
    auto s = parse_substitution("a:ba,b:a");
    EXPECT_THROW(fixed_point_prefix(s.first, 0, 10), Error);
}

TEST(FactorSet, HandExample) {
    const auto f = factor_set(bin("10110"), 2);
    EXPECT_EQ(f, (std::set<Word>{bin("10"), bin("01"), bin("11")}));
}

TEST(FactorSet, FullLengthGivesWordItself) {
    Gen g(3);
    for (int i = 0; i < 20; ++i) {
        const Word w = g.word(g.uniform(1, 30), 3);
        EXPECT_EQ(factor_set(w, w.size()), std::set<Word>{w});
    }
}

TEST(FactorSet, SturmianPrefixHasLPlusOneFactors) {
    const auto cf = CfSpec::golden_mean().until_denominator_exceeds(BigInt(10'000));
    const Word prefix = c_alpha_prefix(cf, 10'000);
    EXPECT_EQ(factor_set(prefix, 10).size(), 11u);
    // Brute-force oracle: collect substrings of the string form.
    const std::string text = to_string(prefix);
    std::set<std::string> brute;
    for (std::size_t i = 0; i + 10 <= text.size(); ++i) brute.insert(text.substr(i, 10));
    EXPECT_EQ(brute.size(), 11u);
}

TEST(FactorSet, RejectsBadLength) {
    EXPECT_THROW(factor_set(bin("101"), 0), Error);
    EXPECT_THROW(factor_set(bin("101"), 4), Error);
}

TEST(Frequency, FullOverlap) {
    const auto f = frequency(letters("aaaa"), letters("aa"));
    EXPECT_EQ(f.occurrence_count, 3u);
    EXPECT_EQ(f.density(), Rational(1));
}

TEST(Frequency, HandCount) {
    const auto f = frequency(bin("10110"), bin("11"));
    EXPECT_EQ(f.occurrence_count, 1u);
    EXPECT_EQ(f.density(), Rational(1, 4));
}

TEST(Frequency, FibonacciLetterFrequency) {
    auto fib = named_substitution("fibonacci");
    Word u = fixed_point_prefix(fib.first, 0, 1'000'000);
    u.truncate(1'000'000);
    const auto f = frequency(u, fib.second.parse("a"));
    EXPECT_NEAR(f.density_value(), (std::sqrt(5.0) - 1.0) / 2.0, 1e-3);
}

TEST(Frequency, MatchesNaiveCountOnRandomWords) {
    Gen g(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Word w = g.word(g.uniform(5, 200), 2), t = g.word(g.uniform(1, 4), 2);
        std::size_t naive = 0;
        for (std::size_t i = 0; i + t.size() <= w.size(); ++i)
            naive += std::equal(t.begin(), t.end(), w.begin() + static_cast<long>(i));
        EXPECT_EQ(frequency(w, t).occurrence_count, naive);
    }
}

TEST(SquarePrefix, Examples) {
    EXPECT_TRUE(detect_square_prefix(bin("0101"), 2));
    EXPECT_FALSE(detect_square_prefix(bin("0110"), 2));
    EXPECT_TRUE(detect_square_prefix(bin("1011010110"), 5));
    EXPECT_THROW(detect_square_prefix(bin("010"), 2), Error);
}

TEST(SquarePrefix, SquaresAlwaysDetected) {
    Gen g(8);
    for (int trial = 0; trial < 50; ++trial) {
        const Word b = g.word(g.uniform(1, 20), 2);
        EXPECT_TRUE(detect_square_prefix(b.power(2) + g.word(g.uniform(0, 5), 2), b.size()));
    }
}

TEST(Palindromes, Examples) {
    EXPECT_EQ(detect_palindromes(letters("aba"), 3), std::vector<std::size_t>{0});
    EXPECT_TRUE(detect_palindromes(letters("ab"), 2).empty());
}

TEST(Palindromes, FibonacciPrefixAgainstReverseCompare) {
    const auto cf = CfSpec::golden_mean().until_denominator_exceeds(BigInt(100));
    const std::string text = to_string(c_alpha_prefix(cf, 100));
    std::vector<std::size_t> oracle;
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
        const std::string f = text.substr(i, 3);
        if (std::string(f.rbegin(), f.rend()) == f) oracle.push_back(i);
    }
    EXPECT_EQ(detect_palindromes(bin(text), 3), oracle);
}

TEST(Word, RejectsOutOfAlphabetSymbols) {
    EXPECT_THROW(Word(std::vector<Symbol>{0, 2}, 2), Error);
    EXPECT_THROW(Alphabet::binary().parse("102"), Error);
}
