#pragma once

// Two-block (Gordon-type) stability machinery.
//
// If V(k) = V(k+n) for 1 <= k <= n then M(1,2n) = M(1,n)^2, and Cayley-Hamilton
// for determinant-one matrices gives U(2n) - tr M(1,n) U(n) + U(0) = 0 with
// U(k) = (u(k+1), u(k)). Hence ||U(0)|| <= |tr| ||U(n)|| + ||U(2n)||, so
// max(||U(n)||, ||U(2n)||) >= ||U(0)|| / (C + 1) whenever |tr| <= C.

#include <cmath>
#include <optional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spectrum.hpp"

namespace sturmspec {

struct TraceSample {
    double energy = 0;
    double abs_trace = 0;
};

struct GordonCertificate {
    std::size_t n = 0;
    double C = 0;
    std::string C_provenance;
    bool square_ok = false;
    std::vector<TraceSample> trace_samples;
    bool verdict = false;
};

/// Checks V(k) = V(k+n), 1 <= k <= n, and |tr M(E,1,n)| <= C at each sampled energy.
inline GordonCertificate gordon_membership(const PotentialWindow& window, std::size_t n, double C,
                                           std::span<const double> energies, std::string C_provenance = {}) {
    if (n == 0) throw Error(ErrorKind::invalid_input, "stability", "n", "period must be >= 1");
    const long long two_n = 2 * static_cast<long long>(n);
    if (!window.covers(1, two_n))
        throw Error(ErrorKind::window, "stability", "window", "window must cover [1, 2n]");
    if (energies.empty())
        throw Error(ErrorKind::invalid_input, "stability", "energies", "no energy samples");
    GordonCertificate c;
    c.n = n;
    c.C = C;
    c.C_provenance = std::move(C_provenance);
    c.square_ok = detect_square_prefix(window.restricted(1, two_n).symbols(), n);
    bool traces_ok = true;
    for (double E : energies) {
        const double t = std::abs(transfer_product(window, E, 1, static_cast<long long>(n)).trace());
        c.trace_samples.push_back({E, t});
        if (!(t <= C)) traces_ok = false;
    }
    c.verdict = c.square_ok && traces_ok;
    return c;
}

struct Seed {
    double u0 = 0, u1 = 0;
};

struct NondecayReport {
    std::size_t n = 0;
    double energy = 0;
    double trace = 0;
    double C = 0;
    double bound = 0;                 // 1 / (C + 1)
    std::vector<double> ratios;       // max(|U(n)|, |U(2n)|) / |U(0)| per seed
    double min_max_norm_ratio = 0;
    double max_identity_residual = 0; // |U(2n) - tr U(n) + U(0)| / |U(0)|
    bool all_ok = false;
};

/// Verifies the non-decay lower bound for every seed. Requires the square
/// condition at n and |tr M(E,1,n)| <= C.
inline NondecayReport nondecay_verify(const PotentialWindow& window, std::size_t n, double E,
                                      std::span<const Seed> seeds, double C) {
    const long long nn = static_cast<long long>(n);
    if (n == 0 || !window.covers(1, 2 * nn))
        throw Error(ErrorKind::certificate, "stability", "window", "window must cover [1, 2n]");
    if (!detect_square_prefix(window.restricted(1, 2 * nn).symbols(), n))
        throw Error(ErrorKind::certificate, "stability", "n", "square condition fails at this period");
    NondecayReport r;
    r.n = n;
    r.energy = E;
    r.C = C;
    r.trace = transfer_product(window, E, 1, nn).trace();
    if (!(std::abs(r.trace) <= C))
        throw Error(ErrorKind::certificate, "stability", "C", "|trace| exceeds C at this energy");
    r.bound = 1.0 / (C + 1.0);

    const auto block = window.restricted(1, 2 * nn);
    r.min_max_norm_ratio = std::numeric_limits<double>::infinity();
    r.all_ok = true;
    for (const auto& seed : seeds) {
        const auto sol = iterate_solution(block, E, seed.u0, seed.u1);
        const Vec2 U0 = sol.state(0), Un = sol.state(nn), U2n = sol.state(2 * nn);
        const double base = U0.norm();
        const double ratio = std::max(Un.norm(), U2n.norm()) / base;
        const Vec2 res{U2n.x - r.trace * Un.x + U0.x, U2n.y - r.trace * Un.y + U0.y};
        r.max_identity_residual = std::max(r.max_identity_residual, res.norm() / base);
        r.ratios.push_back(ratio);
        r.min_max_norm_ratio = std::min(r.min_max_norm_ratio, ratio);
        if (ratio < r.bound - 1e-9) r.all_ok = false;
    }
    return r;
}

/// Unit vectors at uniformly random angles.
inline std::vector<Seed> random_unit_seeds(std::size_t count, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Seed> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = angle(rng);
        // U(0) = (u(1), u(0))
        out.push_back({std::sin(t), std::cos(t)});
    }
    return out;
}

/// Unit U(0) most contracted by M: the right singular vector of the smallest singular value.
inline Seed most_contracted_seed(const Mat2& M) {
    // Eigenvector of M^T M for its smaller eigenvalue.
    const double p = M.a * M.a + M.c * M.c, q = M.a * M.b + M.c * M.d, s = M.b * M.b + M.d * M.d;
    const double mean = 0.5 * (p + s), diff = 0.5 * (p - s);
    const double lmin = mean - std::hypot(diff, q);
    double x = q, y = lmin - p; // (M^T M - lmin) v = 0 from the first row
    if (std::hypot(x, y) < 1e-300) {
        x = lmin - s;
        y = q;
    }
    if (std::hypot(x, y) < 1e-300) {
        x = 1;
        y = 0;
    }
    const double len = std::hypot(x, y);
    return {y / len, x / len}; // U(0) = (u(1), u(0)) = (x, y)
}

/// Window V(k) = lambda * c_alpha(j + k - 1), k = 1..2 q_n, where j is the first
/// occurrence of s_n s_n in c_alpha. The search prefix grows up to search_limit.
inline PotentialWindow square_window(const ContinuedFraction& cf, double lambda, std::size_t n,
                                     std::size_t search_limit = 1'000'000) {
    const auto tower = standard_words(cf, n);
    const Word square = tower.s(static_cast<long>(n)).power(2);
    for (std::size_t length = 8 * square.size();; length *= 4) {
        length = std::min(length, search_limit);
        const Word prefix = c_alpha_prefix(cf, length);
        const auto occ = occurrences(prefix.view(), square.view());
        if (!occ.empty())
            return PotentialWindow::binary(1, prefix.slice(occ.front(), square.size()), lambda,
                                           Provenance::standard_word);
        if (length == search_limit) break;
    }
    throw Error(ErrorKind::window, "stability", "n", "s_n s_n does not occur in the searched prefix");
}

struct MeasureBoundReport {
    std::size_t level = 0;
    std::size_t q = 0;
    std::size_t prefix_length = 0;
    std::size_t cube_occurrences = 0;
    Rational cube_density;       // d(s_n s_n s_n) estimate
    double product = 0;          // q_n * density
    double lower_bound = 0;      // 1/7 - 2 q_n / prefix_length
    WindowCoverage coverage;
    bool bound_checked = false;  // coverage passed, so the bound applies
    bool bound_ok = false;
    bool shortfall = false;      // no cube occurrence at all
};

/// Measure bound from an explicit prefix (the block s_n given directly).
inline MeasureBoundReport measure_bound_from_prefix(const Word& prefix, const Word& block, std::size_t window_length) {
    MeasureBoundReport r;
    r.q = block.size();
    r.prefix_length = prefix.size();
    const Word cube = block.power(3);
    const auto f = frequency(prefix, cube);
    r.cube_occurrences = f.occurrence_count;
    r.cube_density = f.density();
    r.product = static_cast<double>(r.q) * f.density_value();
    r.lower_bound = 1.0 / 7.0 - 2.0 * static_cast<double>(r.q) / static_cast<double>(r.prefix_length);
    r.shortfall = r.cube_occurrences == 0;
    r.coverage = cube_coverage(prefix.view(), block, window_length);
    r.bound_checked = r.coverage.all_windows_contain_cube;
    r.bound_ok = !r.bound_checked || r.product >= r.lower_bound;
    return r;
}

/// q_n * d(s_n^3) from exact overlapping counts in the c_alpha prefix.
inline MeasureBoundReport stability_measure_bound(const ContinuedFraction& cf, std::size_t n,
                                                  std::size_t prefix_length) {
    if (n + 1 > cf.depth()) throw Error(ErrorKind::depth, "stability", "n", "need a_{n+1}");
    if (BigInt(prefix_length) < 10 * cf.q(n + 1))
        throw Error(ErrorKind::window, "stability", "prefix", "prefix must be at least 10 q_{n+1}");
    const auto tower = standard_words(cf, n);
    const Word prefix = c_alpha_prefix(cf, prefix_length);
    const std::size_t mult = cf.a(n + 1) >= 2 ? 6 : 7;
    auto r = measure_bound_from_prefix(prefix, tower.s(static_cast<long>(n)), mult * tower.s(static_cast<long>(n)).size());
    r.level = n;
    r.coverage.level = n;
    return r;
}

} // namespace sturmspec
