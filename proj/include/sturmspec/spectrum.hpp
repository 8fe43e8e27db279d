#pragma once

// Band spectra of periodic approximants, {E : |tr M(E)| <= 2}, and the
// measure / trace / Lyapunov diagnostics built on them.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "parallel.hpp"
#include "transfer.hpp"

namespace sturmspec {

struct Interval {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double E) const { return E >= lo && E <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

using IntervalSet = std::vector<Interval>; // sorted, disjoint

inline double measure(std::span<const Interval> set) {
    double m = 0;
    for (const auto& i : set) m += i.length();
    return m;
}

inline IntervalSet intersect(std::span<const Interval> a, std::span<const Interval> b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo), hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi) ++i;
        else ++j;
    }
    return out;
}

inline IntervalSet unite(std::span<const Interval> a, std::span<const Interval> b) {
    IntervalSet all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    IntervalSet out;
    for (const auto& iv : all) {
        if (!out.empty() && iv.lo <= out.back().hi) out.back().hi = std::max(out.back().hi, iv.hi);
        else out.push_back(iv);
    }
    return out;
}

/// Open gaps between consecutive intervals of a sorted set.
inline IntervalSet gaps(std::span<const Interval> set) {
    IntervalSet out;
    for (std::size_t i = 0; i + 1 < set.size(); ++i)
        if (set[i + 1].lo > set[i].hi) out.push_back({set[i].hi, set[i + 1].lo});
    return out;
}

struct BandSpectrum {
    IntervalSet bands;
    std::size_t period = 0;
    std::optional<std::size_t> level;
    double lambda = 0;
    /// Grid refinements used (0 = the initial 16q grid sufficed).
    int refinements = 0;

    double measure() const { return sturmspec::measure(bands); }
    std::vector<double> midpoints() const {
        std::vector<double> out;
        for (const auto& b : bands) out.push_back(b.midpoint());
        return out;
    }
};

/// tr M(E) over one period.
inline double discriminant(std::span<const double> period_values, double E) {
    Mat2 m;
    for (double V : period_values) m = Mat2::site(E, V) * m;
    return m.trace();
}

struct BandSearchOptions {
    std::size_t points_per_period = 16;
    int max_refinements = 3;
    std::size_t refine_factor = 4;
    double edge_tolerance = 1e-10;
};

/// Bands of the periodic operator with the given period values. Edges are
/// roots of tr - 2 and tr + 2, bracketed on a grid and bisected.
inline BandSpectrum band_spectrum_values(std::span<const double> values, std::optional<Interval> range = std::nullopt,
                                         const BandSearchOptions& opt = {}) {
    const std::size_t q = values.size();
    if (q == 0) throw Error(ErrorKind::invalid_input, "spectrum", "word", "empty period");
    const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
    // |tr| <= 2 forces E into [min V - 2, max V + 2].
    const Interval span = range.value_or(Interval{*vmin - 2.0 - 1e-3, *vmax + 2.0 + 1e-3});

    auto bisect = [&](double a, double b, double target, bool sign_a) {
        while (b - a > opt.edge_tolerance) {
            const double m = 0.5 * (a + b);
            if ((discriminant(values, m) - target > 0) == sign_a) a = m;
            else b = m;
        }
        return 0.5 * (a + b);
    };

    std::size_t points = opt.points_per_period * q;
    for (int r = 0; r <= opt.max_refinements; ++r, points *= opt.refine_factor) {
        std::vector<double> E(points + 1), D(points + 1);
        for (std::size_t i = 0; i <= points; ++i) {
            E[i] = span.lo + (span.hi - span.lo) * static_cast<double>(i) / static_cast<double>(points);
            D[i] = discriminant(values, E[i]);
            if (!std::isfinite(D[i]))
                throw Error(ErrorKind::numeric, "spectrum", "E", "discriminant overflow");
        }
        std::vector<double> edges;
        for (double target : {2.0, -2.0})
            for (std::size_t i = 0; i < points; ++i) {
                const bool sa = D[i] - target > 0, sb = D[i + 1] - target > 0;
                if (sa != sb) edges.push_back(bisect(E[i], E[i + 1], target, sa));
            }
        if (edges.size() != 2 * q) continue;
        std::sort(edges.begin(), edges.end());
        BandSpectrum out;
        out.period = q;
        out.refinements = r;
        bool ok = true;
        for (std::size_t b = 0; b < q; ++b) {
            Interval band{edges[2 * b], edges[2 * b + 1]};
            if (std::abs(discriminant(values, band.midpoint())) > 2.0 + 1e-9) ok = false;
            out.bands.push_back(band);
        }
        if (ok) return out;
    }
    throw Error(ErrorKind::resolution, "spectrum", "resolution",
                "could not resolve " + std::to_string(q) + " bands after " + std::to_string(opt.max_refinements) +
                    " refinements");
}

/// Bands of the period-|word| potential V = lambda * symbol.
inline BandSpectrum band_spectrum(const Word& word, double lambda, std::optional<Interval> range = std::nullopt,
                                  const BandSearchOptions& opt = {}) {
    std::vector<double> values;
    values.reserve(word.size());
    for (Symbol s : word) values.push_back(lambda * s);
    auto out = band_spectrum_values(values, range, opt);
    out.lambda = lambda;
    return out;
}

/// sigma_n: bands of the periodic approximant built from s_n.
inline BandSpectrum sturmian_band_spectrum(const ContinuedFraction& cf, double lambda, std::size_t level,
                                           const BandSearchOptions& opt = {}) {
    const auto tower = standard_words(cf, level);
    auto out = band_spectrum(tower.s(static_cast<long>(level)), lambda, std::nullopt, opt);
    out.level = level;
    return out;
}

struct MeasureComparison {
    double measure_a = 0;
    double measure_b = 0;
    IntervalSet intersection;
    double measure_intersection = 0;
};

inline MeasureComparison measure_and_intersect(const BandSpectrum& a, const BandSpectrum& b) {
    if (a.lambda != b.lambda)
        throw Error(ErrorKind::invalid_input, "spectrum", "lambda", "spectra computed at different couplings");
    MeasureComparison r;
    r.measure_a = a.measure();
    r.measure_b = b.measure();
    r.intersection = intersect(a.bands, b.bands);
    r.measure_intersection = measure(r.intersection);
    return r;
}

/// sigma_n for n = 0..max_level.
inline std::vector<BandSpectrum> sturmian_spectra(const ContinuedFraction& cf, double lambda, std::size_t max_level,
                                                  unsigned jobs = 1) {
    return parallel_map(
        max_level + 1, [&](std::size_t n) { return sturmian_band_spectrum(cf, lambda, n); }, jobs);
}

/// sigma_level intersected with sigma_{level+1}: the computable proxy for the spectrum.
inline IntervalSet spectrum_proxy(const ContinuedFraction& cf, double lambda, std::size_t level) {
    const auto a = sturmian_band_spectrum(cf, lambda, level);
    const auto b = sturmian_band_spectrum(cf, lambda, level + 1);
    return intersect(a.bands, b.bands);
}

/// Points lo + j (hi - lo) / (samples + 1), j = 1..samples, in every interval.
inline std::vector<double> sample_energies(std::span<const Interval> set, std::size_t samples_per_band) {
    std::vector<double> out;
    for (const auto& iv : set)
        for (std::size_t j = 1; j <= samples_per_band; ++j)
            out.push_back(iv.lo + iv.length() * static_cast<double>(j) / static_cast<double>(samples_per_band + 1));
    return out;
}

struct TraceBoundReport {
    std::size_t level_max = 0;
    std::size_t proxy_level = 0;
    std::vector<double> sample_energies;
    std::vector<double> sup_abs_trace; // index k = 0..level_max
    double overall_sup = 0;
};

/// sup |tr M_{lambda,alpha,E}(k)|, k <= level_max, over energies sampled in
/// sigma_P intersect sigma_{P+1} (P = proxy_level, default level_max).
inline TraceBoundReport trace_bound_scan(const ContinuedFraction& cf, double lambda, std::size_t level_max,
                                         std::size_t samples_per_band = 3,
                                         std::optional<std::size_t> proxy_level = std::nullopt, unsigned jobs = 1) {
    if (lambda == 0.0)
        throw Error(ErrorKind::invalid_input, "spectrum", "lambda", "trace bound needs lambda != 0");
    if (samples_per_band == 0)
        throw Error(ErrorKind::invalid_input, "spectrum", "samples", "need at least one sample per band");
    TraceBoundReport r;
    r.level_max = level_max;
    r.proxy_level = proxy_level.value_or(level_max);
    const auto proxy = spectrum_proxy(cf, lambda, r.proxy_level);
    r.sample_energies = sample_energies(proxy, samples_per_band);
    const auto traces = parallel_map(
        r.sample_energies.size(),
        [&](std::size_t i) { return sturmian_traces(cf, lambda, r.sample_energies[i], level_max); }, jobs);
    r.sup_abs_trace.assign(level_max + 1, 0.0);
    for (const auto& t : traces)
        for (std::size_t k = 0; k <= level_max; ++k) r.sup_abs_trace[k] = std::max(r.sup_abs_trace[k], std::abs(t[k]));
    r.overall_sup = *std::max_element(r.sup_abs_trace.begin(), r.sup_abs_trace.end());
    return r;
}

struct EnergyGamma {
    double energy = 0;
    double gamma_plus = 0;
};

struct ZeroLyapunovReport {
    std::size_t level = 0;
    std::size_t control_level = 0;
    long long steps = 0;
    std::vector<EnergyGamma> in_spectrum;
    std::vector<EnergyGamma> controls;
    double max_in_spectrum = 0;
    double min_control = 0;
    double free_control = 0;
    bool separated = false;
};

/// gamma^+ at band midpoints of sigma_level intersect sigma_{level+1}, against
/// gap midpoints of sigma_c union sigma_{c+1} (c = control_level), which lie
/// outside the spectrum.
inline ZeroLyapunovReport zero_lyapunov_check(const ContinuedFraction& cf, double lambda, std::size_t level,
                                              long long steps, std::size_t control_level = 3, unsigned jobs = 1) {
    ZeroLyapunovReport r;
    r.level = level;
    r.control_level = control_level;
    r.steps = steps;

    const auto potential =
        PotentialWindow::binary(1, c_alpha_prefix(cf, static_cast<std::size_t>(steps)), lambda, Provenance::standard_word);
    const auto proxy = spectrum_proxy(cf, lambda, level);
    const auto coarse = unite(sturmian_band_spectrum(cf, lambda, control_level).bands,
                              sturmian_band_spectrum(cf, lambda, control_level + 1).bands);
    const auto control_gaps = gaps(coarse);
    if (control_gaps.empty())
        throw Error(ErrorKind::invalid_input, "spectrum", "control_level", "no gaps at the control level");

    std::vector<double> energies;
    for (const auto& b : proxy) energies.push_back(b.midpoint());
    const std::size_t n_in = energies.size();
    for (const auto& g : control_gaps) energies.push_back(g.midpoint());

    const auto gammas = parallel_map(
        energies.size(),
        [&](std::size_t i) { return lyapunov_estimate_forward(potential, energies[i], steps).gamma_plus; }, jobs);

    r.max_in_spectrum = -std::numeric_limits<double>::infinity();
    r.min_control = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (i < n_in) {
            r.in_spectrum.push_back({energies[i], gammas[i]});
            r.max_in_spectrum = std::max(r.max_in_spectrum, gammas[i]);
        } else {
            r.controls.push_back({energies[i], gammas[i]});
            r.min_control = std::min(r.min_control, gammas[i]);
        }
    }
    const auto zero = [](long long) { return 0.0; };
    r.free_control = lyapunov_estimate_fn(zero, 0.0, steps, false).gamma_plus;
    r.separated = r.max_in_spectrum < r.min_control;
    return r;
}

} // namespace sturmspec
