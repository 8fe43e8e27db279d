#pragma once

// Continued fractions with exact convergents, the standard-word tower
// s_{-1} = 1, s_0 = 0, s_1 = s_0^{a_1-1} s_{-1}, s_n = s_{n-1}^{a_n} s_{n-2},
// and the characteristic sequence c_alpha = lim s_n.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/integer/common_factor_rt.hpp>

#include "symbolic.hpp"

namespace sturmspec {

/// [a_1, ..., a_N] with convergents p_n / q_n, n = 0..N.
class ContinuedFraction {
public:
    ContinuedFraction() = default;
    explicit ContinuedFraction(std::vector<std::uint64_t> coefficients) : a_(std::move(coefficients)) {
        p_ = {BigInt(0)};
        q_ = {BigInt(1)};
        if (a_.empty()) return;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (a_[i] == 0)
                throw Error(ErrorKind::invalid_input, "sturmian", "alpha-cf",
                            "coefficient a_" + std::to_string(i + 1) + " must be >= 1");
        p_.push_back(BigInt(1));
        q_.push_back(BigInt(a_[0]));
        for (std::size_t n = 2; n <= a_.size(); ++n) {
            p_.push_back(a_[n - 1] * p_[n - 1] + p_[n - 2]);
            q_.push_back(a_[n - 1] * q_[n - 1] + q_[n - 2]);
        }
    }

    std::size_t depth() const noexcept { return a_.size(); }
    /// a_n for 1 <= n <= depth().
    std::uint64_t a(std::size_t n) const {
        if (n == 0 || n > a_.size())
            throw Error(ErrorKind::depth, "sturmian", "n", "coefficient a_" + std::to_string(n) + " not available");
        return a_[n - 1];
    }
    const std::vector<std::uint64_t>& coefficients() const noexcept { return a_; }
    const BigInt& p(std::size_t n) const { return p_.at(n); }
    const BigInt& q(std::size_t n) const { return q_.at(n); }
    Rational convergent(std::size_t n) const { return Rational(p_.at(n), q_.at(n)); }

    /// Smallest n with q_n > bound, if the expansion is deep enough.
    std::optional<std::size_t> first_level_exceeding(const BigInt& bound) const {
        for (std::size_t n = 0; n < q_.size(); ++n)
            if (q_[n] > bound) return n;
        return std::nullopt;
    }

    /// Re-derives the convergent table and checks the recursion, coprimality,
    /// monotonicity and |p_n/q_n - p_{n+1}/q_{n+1}| = 1/(q_n q_{n+1}).
    bool verify() const {
        if (a_.empty()) return p_.size() == 1 && q_.size() == 1;
        if (p_[0] != 0 || p_[1] != 1 || q_[0] != 1 || q_[1] != a_[0]) return false;
        for (std::size_t n = 2; n <= a_.size(); ++n) {
            if (p_[n] != a_[n - 1] * p_[n - 1] + p_[n - 2]) return false;
            if (q_[n] != a_[n - 1] * q_[n - 1] + q_[n - 2]) return false;
            if (q_[n] <= q_[n - 1]) return false;
        }
        for (std::size_t n = 0; n <= a_.size(); ++n)
            if (boost::integer::gcd(p_[n], q_[n]) != 1) return false;
        for (std::size_t n = 0; n < a_.size(); ++n) {
            Rational diff = convergent(n) - convergent(n + 1);
            if (abs(diff) != Rational(1, q_[n] * q_[n + 1])) return false;
        }
        return true;
    }

private:
    std::vector<std::uint64_t> a_;
    std::vector<BigInt> p_;
    std::vector<BigInt> q_;
};

inline ContinuedFraction convergents(std::vector<std::uint64_t> coefficients) {
    return ContinuedFraction(std::move(coefficients));
}

/// A CF given as preperiod followed by a repeating period (empty period = finite CF).
struct CfSpec {
    std::vector<std::uint64_t> preperiod;
    std::vector<std::uint64_t> period;

    bool periodic() const noexcept { return !period.empty(); }

    ContinuedFraction unroll(std::size_t depth) const {
        std::vector<std::uint64_t> a;
        a.reserve(depth);
        for (std::size_t i = 0; i < depth; ++i) {
            if (i < preperiod.size()) a.push_back(preperiod[i]);
            else if (periodic()) a.push_back(period[(i - preperiod.size()) % period.size()]);
            else break;
        }
        return ContinuedFraction(std::move(a));
    }

    ContinuedFraction full() const {
        return unroll(preperiod.size() + (periodic() ? 64 * period.size() : 0));
    }

    /// Shortest expansion whose last denominator exceeds bound.
    ContinuedFraction until_denominator_exceeds(const BigInt& bound) const {
        std::size_t depth = std::max<std::size_t>(preperiod.size(), 1);
        while (true) {
            auto cf = unroll(depth);
            if (auto n = cf.first_level_exceeding(bound)) return unroll(std::max<std::size_t>(*n, 1));
            if (!periodic() || cf.depth() < depth)
                throw Error(ErrorKind::depth, "sturmian", "alpha-cf",
                            "continued fraction too short: need q_n > " + bound.str());
            depth *= 2;
        }
    }

    static CfSpec golden_mean() { return {{}, {1}}; }
};

/// Parses "1,1,1x40" (x = repeat count) into a coefficient list.
inline std::vector<std::uint64_t> parse_cf_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    auto bad = [&](const std::string& why) {
        return Error(ErrorKind::invalid_input, "sturmian", "alpha-cf", why + " in \"" + std::string(text) + "\"");
    };
    auto parse_u64 = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw bad("malformed number");
        return v;
    };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto x = item.find('x');
        std::uint64_t value = parse_u64(item.substr(0, x));
        std::uint64_t repeat = x == std::string_view::npos ? 1 : parse_u64(item.substr(x + 1));
        if (value == 0) throw bad("coefficients must be >= 1");
        if (repeat > 1'000'000) throw bad("repeat count too large");
        out.insert(out.end(), repeat, value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline std::string format_cf_list(const std::vector<std::uint64_t>& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size();) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        if (!out.empty()) out += ',';
        out += std::to_string(a[i]);
        if (j - i > 1) out += 'x' + std::to_string(j - i);
        i = j;
    }
    return out;
}

/// s_{-1}, s_0, ..., s_N over {0,1}.
class StandardWordTower {
public:
    StandardWordTower(ContinuedFraction cf, std::vector<Word> words) : cf_(std::move(cf)), words_(std::move(words)) {}

    const ContinuedFraction& cf() const noexcept { return cf_; }
    /// Highest available level N.
    std::size_t level() const noexcept { return words_.size() - 2; }
    /// s_n for -1 <= n <= level().
    const Word& s(long n) const {
        if (n < -1 || n > static_cast<long>(level()))
            throw Error(ErrorKind::depth, "sturmian", "n", "level " + std::to_string(n) + " not in tower");
        return words_[static_cast<std::size_t>(n + 1)];
    }

    bool verify() const {
        const Word one(std::vector<Symbol>{1}, 2), zero(std::vector<Symbol>{0}, 2);
        if (s(-1) != one || s(0) != zero) return false;
        for (std::size_t n = 1; n <= level(); ++n) {
            Word expect = n == 1 ? s(0).power(cf_.a(1) - 1) + s(-1) : s(n - 1).power(cf_.a(n)) + s(n - 2);
            if (s(n) != expect) return false;
            if (BigInt(s(n).size()) != cf_.q(n)) return false;
            if (n >= 2 && !s(n - 1).is_prefix_of(s(n))) return false;
        }
        return true;
    }

private:
    ContinuedFraction cf_;
    std::vector<Word> words_;
};

inline StandardWordTower standard_words(const ContinuedFraction& cf, std::size_t N) {
    if (N > cf.depth())
        throw Error(ErrorKind::depth, "sturmian", "N",
                    "level " + std::to_string(N) + " exceeds CF depth " + std::to_string(cf.depth()));
    std::vector<Word> w;
    w.emplace_back(std::vector<Symbol>{1}, 2);
    w.emplace_back(std::vector<Symbol>{0}, 2);
    for (std::size_t n = 1; n <= N; ++n) {
        if (n == 1) w.push_back(w[1].power(cf.a(1) - 1) + w[0]);
        else w.push_back(w[n].power(cf.a(n)) + w[n - 1]);
    }
    return StandardWordTower(cf, std::move(w));
}

/// First L symbols of c_alpha.
inline Word c_alpha_prefix(const ContinuedFraction& cf, std::size_t L) {
    auto level = cf.first_level_exceeding(BigInt(L) - 1);
    if (!level || cf.depth() == 0)
        throw Error(ErrorKind::depth, "sturmian", "alpha-cf",
                    "CF depth " + std::to_string(cf.depth()) + " gives q_N < " + std::to_string(L));
    // s_0 is not a prefix of s_1 when a_1 = 1; from level 1 on the tower is prefix-stable.
    const std::size_t n = std::max<std::size_t>(*level, 1);
    Word prev(std::vector<Symbol>{1}, 2), cur(std::vector<Symbol>{0}, 2);
    for (std::size_t k = 1; k <= n; ++k) {
        Word next = k == 1 ? cur.power(cf.a(1) - 1) + prev : cur.power(cf.a(k)) + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    cur.truncate(L);
    return cur;
}

struct ConjugationCheck {
    bool equal = false;
    Word lhs; // s_n s_{n+1}
    Word rhs; // s_{n+1} s_{n-1}^{a_n - 1} s_{n-2} s_{n-1}
};

/// Builds both sides of s_n s_{n+1} = s_{n+1} s_{n-1}^{a_n-1} s_{n-2} s_{n-1} and compares them.
inline ConjugationCheck verify_conjugation_identity(const StandardWordTower& tower, std::size_t n) {
    if (n < 2)
        throw Error(ErrorKind::invalid_input, "sturmian", "n", "identity needs n >= 2");
    if (n + 1 > tower.level())
        throw Error(ErrorKind::depth, "sturmian", "n", "tower must reach level n+1");
    ConjugationCheck out;
    out.lhs = tower.s(n) + tower.s(n + 1);
    out.rhs = tower.s(n + 1) + tower.s(n - 1).power(tower.cf().a(n) - 1) + tower.s(n - 2) + tower.s(n - 1);
    out.equal = out.lhs == out.rhs;
    return out;
}

inline ConjugationCheck verify_conjugation_identity(const ContinuedFraction& cf, std::size_t n) {
    return verify_conjugation_identity(standard_words(cf, std::min(n + 1, cf.depth())), n);
}

struct WindowCoverage {
    std::size_t level = 0;
    std::size_t q = 0;
    std::size_t window_length = 0;
    std::size_t prefix_length = 0;
    std::size_t cube_occurrences = 0;
    bool all_windows_contain_cube = false;
    /// Window start whose first fully contained cube starts latest (the first
    /// uncovered window when the check fails).
    std::size_t worst_offset = 0;
    /// Distance from worst_offset to the cube occurrence found there, if any.
    std::optional<std::size_t> worst_lead;
};

/// Slides every window of the given length over a prefix and reports whether
/// each contains an occurrence of cube.
inline WindowCoverage cube_coverage(std::span<const Symbol> prefix, const Word& block, std::size_t window_length) {
    const Word cube = block.power(3);
    WindowCoverage r;
    r.q = block.size();
    r.window_length = window_length;
    r.prefix_length = prefix.size();
    if (window_length < cube.size() || window_length > prefix.size())
        throw Error(ErrorKind::window, "sturmian", "window", "window must fit the cube and the prefix");
    const auto occ = occurrences(prefix, cube.view());
    r.cube_occurrences = occ.size();
    // A window starting at k contains a cube iff some occurrence p has k <= p <= k + W - 3q.
    const std::size_t slack = window_length - cube.size();
    const std::size_t last_start = prefix.size() - window_length;
    std::size_t best_lead = 0;
    bool ok = true;
    std::size_t idx = 0;
    for (std::size_t k = 0; k <= last_start; ++k) {
        while (idx < occ.size() && occ[idx] < k) ++idx;
        if (idx == occ.size() || occ[idx] - k > slack) {
            ok = false;
            r.worst_offset = k;
            r.worst_lead = idx == occ.size() ? std::nullopt : std::optional<std::size_t>(occ[idx] - k);
            break;
        }
        if (occ[idx] - k >= best_lead) {
            best_lead = occ[idx] - k;
            r.worst_offset = k;
            r.worst_lead = best_lead;
        }
    }
    r.all_windows_contain_cube = ok;
    return r;
}

/// Window property at level n: every window of length 7 q_n (6 q_n when
/// a_{n+1} >= 2) in the c_alpha prefix contains s_n s_n s_n.
inline WindowCoverage window_coverage_check(const ContinuedFraction& cf, std::size_t n, std::size_t prefix_length,
                                            std::optional<std::size_t> window_multiple = std::nullopt) {
    if (n + 1 > cf.depth())
        throw Error(ErrorKind::depth, "sturmian", "n", "need a_{n+1}");
    const auto tower = standard_words(cf, n);
    const Word& sn = tower.s(static_cast<long>(n));
    const std::size_t q = sn.size();
    if (prefix_length < 8 * q)
        throw Error(ErrorKind::window, "sturmian", "prefix", "prefix must be at least 8 q_n");
    const std::size_t mult = window_multiple.value_or(cf.a(n + 1) >= 2 ? 6 : 7);
    const Word prefix = c_alpha_prefix(cf, prefix_length);
    auto r = cube_coverage(prefix.view(), sn, mult * q);
    r.level = n;
    return r;
}

} // namespace sturmspec
