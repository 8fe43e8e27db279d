#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sturmspec/symbolic.hpp"

namespace testing_support {

inline sturmspec::Word bin(const std::string& s) { return sturmspec::Alphabet::binary().parse(s); }
inline sturmspec::Word letters(const std::string& s, std::size_t k = 2) {
    return sturmspec::Alphabet::letters(k).parse(s);
}

/// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    std::vector<std::uint64_t> cf(std::size_t depth, std::uint64_t max_coefficient) {
        std::vector<std::uint64_t> a(depth);
        for (auto& x : a) x = uniform(1, max_coefficient);
        return a;
    }
    sturmspec::Word word(std::size_t length, std::size_t alphabet) {
        std::vector<sturmspec::Symbol> s(length);
        for (auto& x : s) x = static_cast<sturmspec::Symbol>(uniform(0, alphabet - 1));
        return sturmspec::Word(std::move(s), alphabet);
    }

private:
    std::mt19937_64 rng_;
};

/// Direct string construction of the standard words, independent of the library.
inline std::vector<std::string> naive_standard_words(const std::vector<std::uint64_t>& a, std::size_t N) {
    std::vector<std::string> s{"1", "0"}; // s_{-1}, s_0
    for (std::size_t n = 1; n <= N; ++n) {
        const std::string& prev = s[s.size() - 1];
        const std::string& prev2 = s[s.size() - 2];
        std::string next;
        const std::uint64_t reps = n == 1 ? a[0] - 1 : a[n - 1];
        for (std::uint64_t k = 0; k < reps; ++k) next += prev;
        next += prev2;
        s.push_back(next);
    }
    return s; // index n + 1 holds s_n
}

/// Rotation coding 1{frac(n x) >= 1 - x} in long double, for small n and well-separated points.
inline std::string naive_rotation_coding(long double x, std::size_t L) {
    std::string out;
    for (std::size_t n = 1; n <= L; ++n) {
        long double t = static_cast<long double>(n) * x;
        t -= static_cast<long double>(static_cast<long long>(t));
        out += t >= 1.0L - x ? '1' : '0';
    }
    return out;
}

} // namespace testing_support
