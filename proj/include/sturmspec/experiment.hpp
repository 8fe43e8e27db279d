#pragma once

// Experiment runner: a validated configuration in, a report document out.
// Reports are JSON (schema_version 1) or, for tabular tasks, CSV.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circlemap.hpp"
#include "stability.hpp"

namespace sturmspec {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int schema_version = 1;

using json = nlohmann::ordered_json;

struct ExperimentConfig {
    std::string task = "word"; // word | spectrum | lyapunov | gordon | hull-check | appendix

    // Model: a named or explicit substitution, or a rotation number by its continued fraction.
    std::string model;          // shorthand: a registry name; "fibonacci" also means the golden-mean rotation
    std::string substitution;   // registry name or "a:ab,b:a"
    std::vector<std::uint64_t> alpha_cf;     // preperiod (or whole finite CF)
    std::vector<std::uint64_t> alpha_period; // repeating part
    std::string beta = "alpha"; // "alpha" (Sturmian) or a rational p/q in (0,1)
    double lambda = 1.0;
    std::string potential = "sturmian"; // lyapunov: sturmian | circle | substitution

    // Numeric knobs.
    std::size_t length = 8;          // word length / factor length L
    std::size_t level_lo = 1, level_hi = 10;
    std::size_t level = 4;
    long long steps = 100000;
    std::size_t prefix = 100000;
    std::size_t grid = 0;            // 0: 4 * L * 1000
    std::size_t seeds = 100;
    std::string energies;            // "a:b:n" or "from-spectrum:P"
    std::size_t samples_per_band = 3;
    std::size_t control_level = 3;
    std::size_t tower_depth = 0;     // word task: also export s_{-1}..s_N
    long long precision = 100;       // approximant denominator > precision * largest index
    std::uint64_t rng_seed = 1;
    unsigned jobs = 1;

    std::string format = "json";
    std::string out;
    bool timing = false;             // embed wall time (breaks byte-identical output)
};

namespace detail {

inline Error invalid(const std::string& parameter, const std::string& what) {
    return Error(ErrorKind::invalid_input, "cli", parameter, what);
}

inline std::pair<std::size_t, std::size_t> parse_levels(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            auto v = static_cast<std::size_t>(std::stoul(text));
            return {v, v};
        }
        return {static_cast<std::size_t>(std::stoul(text.substr(0, dots))),
                static_cast<std::size_t>(std::stoul(text.substr(dots + 2)))};
    } catch (const std::exception&) {
        throw invalid("levels", "expected a..b, got \"" + text + "\"");
    }
}

} // namespace detail

inline std::pair<std::size_t, std::size_t> parse_levels(const std::string& text) { return detail::parse_levels(text); }

inline void validate(const ExperimentConfig& c) {
    using detail::invalid;
    static const std::set<std::string> tasks{"word", "spectrum", "lyapunov", "gordon", "hull-check", "appendix"};
    if (!tasks.contains(c.task)) throw invalid("task", "unknown task \"" + c.task + "\"");
    if (c.format != "json" && c.format != "csv") throw invalid("format", "format must be json or csv");
    if (!std::isfinite(c.lambda)) throw invalid("lambda", "lambda must be finite");
    if (c.beta != "alpha") {
        const Rational b = parse_rational(c.beta, "beta");
        if (!(b > 0 && b < 1)) throw invalid("beta", "beta must lie in (0,1), got " + c.beta);
    }
    if (c.length < 1 || c.length > 10'000'000) throw invalid("L", "L must be in [1, 1e7]");
    if (c.level_lo > c.level_hi || c.level_hi > 40) throw invalid("levels", "need lo <= hi <= 40");
    if (c.level < 1 || c.level > 40) throw invalid("level", "level must be in [1, 40]");
    if (c.steps < 1000 || c.steps > 10'000'000) throw invalid("steps", "steps must be in [1e3, 1e7]");
    if (c.prefix < 1 || c.prefix > 10'000'000) throw invalid("prefix", "prefix must be in [1, 1e7]");
    if (c.grid > 10'000'000) throw invalid("grid", "grid must be <= 1e7");
    if (c.seeds > 1'000'000) throw invalid("seeds", "seeds must be <= 1e6");
    if (c.samples_per_band < 1 || c.samples_per_band > 100) throw invalid("samples", "samples must be in [1, 100]");
    if (c.control_level < 1 || c.control_level > 30) throw invalid("control-level", "must be in [1, 30]");
    if (c.tower_depth > 40) throw invalid("tower", "tower depth must be <= 40");
    if (c.precision < 10) throw invalid("precision", "precision must be >= 10");
    if (c.jobs < 1 || c.jobs > 256) throw invalid("jobs", "jobs must be in [1, 256]");
    if (c.potential != "sturmian" && c.potential != "circle" && c.potential != "substitution")
        throw invalid("potential", "potential must be sturmian, circle or substitution");
    if (!c.model.empty() && !substitution_registry().contains(c.model))
        throw invalid("model", "unknown model \"" + c.model + "\"");
}

inline json to_json(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = schema_version;
    j["tool_version"] = tool_version;
    j["task"] = c.task;
    j["model"] = c.model;
    j["substitution"] = c.substitution;
    j["alpha_cf"] = c.alpha_cf;
    j["alpha_period"] = c.alpha_period;
    j["beta"] = c.beta;
    j["lambda"] = c.lambda;
    j["potential"] = c.potential;
    j["length"] = c.length;
    j["levels"] = std::to_string(c.level_lo) + ".." + std::to_string(c.level_hi);
    j["level"] = c.level;
    j["steps"] = c.steps;
    j["prefix"] = c.prefix;
    j["grid"] = c.grid;
    j["seeds"] = c.seeds;
    j["energies"] = c.energies;
    j["samples_per_band"] = c.samples_per_band;
    j["control_level"] = c.control_level;
    j["tower_depth"] = c.tower_depth;
    j["precision"] = c.precision;
    j["rng_seed"] = c.rng_seed;
    j["jobs"] = c.jobs;
    j["format"] = c.format;
    j["out"] = c.out;
    j["timing"] = c.timing;
    return j;
}

/// Reads a config document; unknown keys are rejected.
inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    if (!j.is_object()) throw detail::invalid("config", "config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        try {
            if (k == "schema_version" || k == "tool_version") continue;
            else if (k == "task") c.task = v.get<std::string>();
            else if (k == "model") c.model = v.get<std::string>();
            else if (k == "substitution") c.substitution = v.get<std::string>();
            else if (k == "alpha_cf") c.alpha_cf = v.is_string() ? parse_cf_list(v.get<std::string>()) : v.get<std::vector<std::uint64_t>>();
            else if (k == "alpha_period") c.alpha_period = v.is_string() ? parse_cf_list(v.get<std::string>()) : v.get<std::vector<std::uint64_t>>();
            else if (k == "beta") c.beta = v.get<std::string>();
            else if (k == "lambda") c.lambda = v.get<double>();
            else if (k == "potential") c.potential = v.get<std::string>();
            else if (k == "length") c.length = v.get<std::size_t>();
            else if (k == "levels") std::tie(c.level_lo, c.level_hi) = detail::parse_levels(v.get<std::string>());
            else if (k == "level") c.level = v.get<std::size_t>();
            else if (k == "steps") c.steps = v.get<long long>();
            else if (k == "prefix") c.prefix = v.get<std::size_t>();
            else if (k == "grid") c.grid = v.get<std::size_t>();
            else if (k == "seeds") c.seeds = v.get<std::size_t>();
            else if (k == "energies") c.energies = v.get<std::string>();
            else if (k == "samples_per_band") c.samples_per_band = v.get<std::size_t>();
            else if (k == "control_level") c.control_level = v.get<std::size_t>();
            else if (k == "tower_depth") c.tower_depth = v.get<std::size_t>();
            else if (k == "precision") c.precision = v.get<long long>();
            else if (k == "rng_seed") c.rng_seed = v.get<std::uint64_t>();
            else if (k == "jobs") c.jobs = v.get<unsigned>();
            else if (k == "format") c.format = v.get<std::string>();
            else if (k == "out") c.out = v.get<std::string>();
            else if (k == "timing") c.timing = v.get<bool>();
            else throw detail::invalid(k, "unknown config key \"" + k + "\"");
        } catch (const json::exception& e) {
            throw detail::invalid(k, std::string("bad value: ") + e.what());
        }
    }
    validate(c);
    return c;
}

/// A rendered experiment: the JSON document and, for tabular tasks, a CSV table.
struct Report {
    json document;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
};

namespace detail {

inline std::string fixed(double x, int digits = 10) {
    if (std::isnan(x)) return "nan";
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

inline CfSpec cf_spec(const ExperimentConfig& c) {
    if (!c.alpha_cf.empty() || !c.alpha_period.empty()) return {c.alpha_cf, c.alpha_period};
    return CfSpec::golden_mean();
}

/// Finite expansion deep enough for `levels` levels (one extra coefficient for a_{n+1}).
inline ContinuedFraction cf_for_levels(const ExperimentConfig& c, std::size_t levels) {
    const CfSpec spec = cf_spec(c);
    // Periodic expansions are unrolled far enough that c_alpha prefixes of 1e7 symbols are available too.
    auto cf = spec.periodic()
                  ? spec.unroll(std::max({levels + 2, spec.preperiod.size(),
                                          spec.until_denominator_exceeds(BigInt(10'000'000)).depth()}))
                  : spec.full();
    if (cf.depth() < levels + 1)
        throw Error(ErrorKind::depth, "sturmian", "alpha-cf",
                    "need at least " + std::to_string(levels + 1) + " coefficients");
    return cf;
}

/// Finite expansion long enough that c_alpha has `length` symbols.
inline ContinuedFraction cf_for_length(const ExperimentConfig& c, std::size_t length) {
    const CfSpec spec = cf_spec(c);
    if (spec.periodic()) return spec.until_denominator_exceeds(BigInt(length));
    return spec.full();
}

inline CircleParams circle_params(const ExperimentConfig& c, long long max_index) {
    const CfSpec spec = cf_spec(c);
    if (c.beta == "alpha") return CircleParams::sturmian(spec, c.lambda, max_index, c.precision);
    return CircleParams::from_cf(spec, parse_rational(c.beta, "beta"), c.lambda, max_index, c.precision);
}

inline bool substitution_model(const ExperimentConfig& c) {
    return !c.substitution.empty() || (!c.model.empty() && c.model != "fibonacci");
}

inline std::pair<Substitution, Alphabet> substitution_of(const ExperimentConfig& c) {
    const std::string& s = !c.substitution.empty() ? c.substitution : c.model;
    if (s.find(':') != std::string::npos) return parse_substitution(s);
    return named_substitution(s);
}

inline json intervals_json(std::span<const Interval> set) {
    json a = json::array();
    for (const auto& iv : set) a.push_back({iv.lo, iv.hi});
    return a;
}

inline std::vector<double> parse_energy_grid(const std::string& text) {
    // a:b:n, n points from a to b inclusive
    std::vector<double> parts;
    std::size_t pos = 0;
    try {
        while (true) {
            auto colon = text.find(':', pos);
            parts.push_back(std::stod(text.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos)));
            if (colon == std::string::npos) break;
            pos = colon + 1;
        }
    } catch (const std::exception&) {
        throw invalid("energies", "expected a:b:n or from-spectrum:P, got \"" + text + "\"");
    }
    if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]) || parts[2] > 1e6)
        throw invalid("energies", "expected a:b:n with integer n >= 1, got \"" + text + "\"");
    const auto n = static_cast<std::size_t>(parts[2]);
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(n == 1 ? parts[0] : parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

/// "from-spectrum:P" -> band midpoints of sigma_P intersect sigma_{P+1}.
inline std::optional<std::size_t> spectrum_energy_level(const std::string& text) {
    const std::string tag = "from-spectrum:";
    if (text.rfind(tag, 0) != 0) return std::nullopt;
    try {
        return static_cast<std::size_t>(std::stoul(text.substr(tag.size())));
    } catch (const std::exception&) {
        throw invalid("energies", "bad spectrum level in \"" + text + "\"");
    }
}

inline Report run_word(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = to_json(c);
    r.csv_header = {"index", "symbol"};
    std::string text;
    if (substitution_model(c)) {
        auto [s, alphabet] = substitution_of(c);
        text = alphabet.format(fixed_point_prefix(s, 0, c.length));
        text.resize(c.length);
        r.document["substitution"] = format_substitution(s, alphabet);
        r.document["primitivity_power"] = s.primitivity_power();
    } else {
        const auto cf = cf_for_length(c, c.length);
        text = to_string(c_alpha_prefix(cf, c.length));
        if (c.tower_depth > 0) {
            const auto tower = standard_words(cf_for_levels(c, c.tower_depth), c.tower_depth);
            json t = json::array();
            for (long n = -1; n <= static_cast<long>(c.tower_depth); ++n) t.push_back(to_string(tower.s(n)));
            r.document["tower"] = t;
        }
    }
    r.document["word"] = text;
    for (std::size_t i = 0; i < text.size(); ++i) r.csv_rows.push_back({std::to_string(i + 1), std::string(1, text[i])});
    return r;
}

inline Report run_spectrum(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = to_json(c);
    const auto cf = cf_for_levels(c, c.level_hi + 1);
    const std::size_t first = c.level_lo == 0 ? 0 : c.level_lo - 1;
    std::vector<BandSpectrum> spectra(c.level_hi + 1);
    auto computed = parallel_map(
        c.level_hi - first + 1, [&](std::size_t i) { return sturmian_band_spectrum(cf, c.lambda, first + i); }, c.jobs);
    for (std::size_t i = 0; i < computed.size(); ++i) spectra[first + i] = std::move(computed[i]);
    r.csv_header = {"level", "q", "band_count", "measure", "measure_intersect_prev"};
    json levels = json::array();
    for (std::size_t n = c.level_lo; n <= c.level_hi; ++n) {
        const auto& s = spectra[n];
        const double inter = n == 0 ? s.measure() : measure(intersect(spectra[n - 1].bands, s.bands));
        json row;
        row["level"] = n;
        row["q"] = s.period;
        row["band_count"] = s.bands.size();
        row["measure"] = s.measure();
        row["measure_intersect_prev"] = inter;
        row["bands"] = intervals_json(s.bands);
        levels.push_back(row);
        r.csv_rows.push_back({std::to_string(n), std::to_string(s.period), std::to_string(s.bands.size()),
                              fixed(s.measure()), fixed(inter)});
    }
    r.document["levels"] = levels;
    return r;
}

inline std::vector<double> energies_for(const ExperimentConfig& c, const std::string& fallback) {
    const std::string spec = c.energies.empty() ? fallback : c.energies;
    if (auto level = spectrum_energy_level(spec)) {
        const auto cf = cf_for_levels(c, *level + 1);
        std::vector<double> out;
        for (const auto& iv : spectrum_proxy(cf, c.lambda, *level)) out.push_back(iv.midpoint());
        return out;
    }
    return parse_energy_grid(spec);
}

inline Report run_lyapunov(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = to_json(c);
    const auto energies = energies_for(c, "-3:3:61");
    std::optional<PotentialWindow> window;
    bool two_sided = true;
    if (c.potential == "substitution") {
        auto [s, alphabet] = substitution_of(c);
        std::vector<double> values;
        for (std::size_t a = 0; a < s.alphabet_size(); ++a) values.push_back(c.lambda * static_cast<double>(a));
        window = PotentialWindow(1, fixed_point_prefix(s, 0, static_cast<std::size_t>(c.steps)), values,
                                 Provenance::substitution);
        two_sided = false; // the fixed point is one-sided
    } else {
        ExperimentConfig cc = c;
        if (c.potential == "sturmian") cc.beta = "alpha";
        window = circle_potential_window(circle_params(cc, c.steps), Rational(0), -c.steps, c.steps);
    }
    const auto estimates = parallel_map(
        energies.size(),
        [&](std::size_t i) {
            return two_sided ? lyapunov_estimate(*window, energies[i], c.steps)
                             : lyapunov_estimate_forward(*window, energies[i], c.steps);
        },
        c.jobs);
    r.csv_header = {"E", "gamma_plus", "gamma_minus"};
    json rows = json::array();
    for (const auto& e : estimates) {
        json row;
        row["E"] = e.energy;
        row["gamma_plus"] = e.gamma_plus;
        row["gamma_minus"] = std::isnan(e.gamma_minus) ? json(nullptr) : json(e.gamma_minus);
        rows.push_back(row);
        r.csv_rows.push_back({fixed(e.energy), fixed(e.gamma_plus), fixed(e.gamma_minus)});
    }
    r.document["estimates"] = rows;
    return r;
}

inline Report run_gordon(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = to_json(c);
    const std::string espec = c.energies.empty() ? "from-spectrum:8" : c.energies;
    const auto proxy_level = spectrum_energy_level(espec);
    const std::size_t P = proxy_level.value_or(8);
    const std::size_t lo = c.level, hi = c.level;
    const auto cf = cf_for_levels(c, std::max(P, hi) + 2);
    const auto energies = energies_for(c, espec);

    constexpr double headroom = 0.10;
    const auto scan = trace_bound_scan(cf, c.lambda, std::max(P, hi), c.samples_per_band, P, c.jobs);
    const double C = scan.overall_sup * (1.0 + headroom);
    std::ostringstream prov;
    prov << "trace_bound_scan(level_max=" << std::max(P, hi) << ", proxy_level=" << P
         << ", samples_per_band=" << c.samples_per_band << ") sup * (1 + " << headroom << ")";

    auto seeds = random_unit_seeds(c.seeds, c.rng_seed);
    json certificates = json::array();
    for (std::size_t n = lo; n <= hi; ++n) {
        const auto window = square_window(cf, c.lambda, n);
        const std::size_t q = window.size() / 2;
        const auto cert = gordon_membership(window, q, C, energies, prov.str());
        json jc;
        jc["level"] = n;
        jc["n"] = q;
        jc["square_ok"] = cert.square_ok;
        jc["verdict"] = cert.verdict;
        json samples = json::array();
        for (const auto& s : cert.trace_samples) samples.push_back({{"E", s.energy}, {"abs_trace", s.abs_trace}});
        jc["trace_samples"] = samples;
        json nondecay = json::array();
        if (cert.verdict) {
            for (double E : energies) {
                auto all = seeds;
                all.push_back(most_contracted_seed(transfer_product(window, E, 1, static_cast<long long>(q)).matrix()));
                const auto nd = nondecay_verify(window, q, E, all, C);
                nondecay.push_back({{"E", E},
                                    {"trace", nd.trace},
                                    {"min_max_norm_ratio", nd.min_max_norm_ratio},
                                    {"bound", nd.bound},
                                    {"identity_residual", nd.max_identity_residual},
                                    {"ok", nd.all_ok}});
            }
        }
        jc["nondecay"] = nondecay;
        certificates.push_back(jc);
    }
    r.document["certificates"] = certificates;
    r.document["derived_constant"] = {
        {"C", C},
        {"empirical_sup_trace", scan.overall_sup},
        {"headroom", headroom},
        {"source", prov.str()},
        {"nondecay_bound", 1.0 / (C + 1.0)},
        {"derivation", "U(2n) - tr U(n) + U(0) = 0 gives |U(0)| <= |tr| |U(n)| + |U(2n)| <= (C+1) max(|U(n)|, |U(2n)|)"}};
    return r;
}

inline json words_json(const std::set<Word>& set) {
    json a = json::array();
    for (const auto& w : set) a.push_back(to_string(w));
    return a;
}

inline Report run_hull_check(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = to_json(c);
    const auto params = circle_params(c, static_cast<long long>(c.prefix));
    const std::size_t grid = c.grid == 0 ? 4 * c.length * 1000 : c.grid;
    const auto h = hull_factor_comparison(params, c.length, grid, c.prefix);
    r.document["factors_v0"] = words_json(h.factors_v0);
    r.document["factors_grid"] = words_json(h.factors_grid);
    r.document["missing"] = words_json(h.missing);
    r.document["extra"] = words_json(h.extra);
    r.document["skipped_theta"] = h.skipped_theta;
    r.document["subset"] = h.subset;
    r.document["grid"] = grid;
    return r;
}

inline Report run_appendix(const ExperimentConfig& c) {
    Report r;
    r.document["config"] = to_json(c);
    const long long N = std::max<long long>(1000, static_cast<long long>(c.length));
    const auto params = circle_params(c, std::max<long long>(N, static_cast<long long>(c.prefix)));
    const auto w0 = boundary_limit_window(params, BoundaryPoint::at_zero, 0, 0);
    const auto w1 = boundary_limit_window(params, BoundaryPoint::at_one_minus_beta, 0, 0);
    r.document["omega_0_at_0"] = w0.value(0);
    r.document["omega_1_minus_beta_at_0"] = w1.value(0);

    std::mt19937_64 rng(c.rng_seed);
    std::uniform_int_distribution<long long> num(0, 999'999);
    json disc = json::array();
    std::size_t worst = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        const Rational theta(num(rng), 1'000'003);
        const auto d = discontinuity_indices(params, theta, N);
        worst = std::max(worst, d.size());
        disc.push_back({{"theta", theta.str()}, {"indices", d}});
    }
    r.document["discontinuities"] = disc;
    r.document["max_discontinuity_count"] = worst;

    const auto v0 = circle_potential_window(params, Rational(0), 1, N);
    const auto om0 = boundary_limit_window(params, BoundaryPoint::at_zero, 1, N);
    const auto dset = discontinuity_indices(params, Rational(0), N);
    std::size_t off_set_mismatch = 0;
    for (long long n = 1; n <= N; ++n)
        if (v0.symbol(n) != om0.symbol(n) && std::find(dset.begin(), dset.end(), n) == dset.end()) ++off_set_mismatch;
    r.document["boundary_limit_mismatches_off_discontinuities"] = off_set_mismatch;

    const std::size_t L = std::min<std::size_t>(c.length, 64);
    const std::size_t grid = c.grid == 0 ? 4 * L * 1000 : c.grid;
    const auto h = hull_factor_comparison(params, L, grid, c.prefix);
    r.document["hull"] = {{"L", L},
                          {"factors_v0", h.factors_v0.size()},
                          {"factors_grid", h.factors_grid.size()},
                          {"missing", words_json(h.missing)},
                          {"extra", words_json(h.extra)},
                          {"skipped_theta", h.skipped_theta},
                          {"subset", h.subset}};
    return r;
}

} // namespace detail

/// Dispatches a validated config to the module operations.
inline Report run_experiment(const ExperimentConfig& c) {
    validate(c);
    const auto start = std::chrono::steady_clock::now();
    Report r;
    if (c.task == "word") r = detail::run_word(c);
    else if (c.task == "spectrum") r = detail::run_spectrum(c);
    else if (c.task == "lyapunov") r = detail::run_lyapunov(c);
    else if (c.task == "gordon") r = detail::run_gordon(c);
    else if (c.task == "hull-check") r = detail::run_hull_check(c);
    else r = detail::run_appendix(c);
    if (c.timing)
        r.document["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") return r.document.dump(2) + "\n";
    if (format != "csv") throw detail::invalid("format", "format must be json or csv");
    if (r.csv_header.empty()) throw detail::invalid("format", "this task has no CSV form; use json");
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(r.csv_header);
    for (const auto& row : r.csv_rows) line(row);
    return out;
}

inline void write_report(const std::string& bytes, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::io, "cli", "out", "cannot open \"" + path + "\" for writing");
    f << bytes;
    if (!f) throw Error(ErrorKind::io, "cli", "out", "write to \"" + path + "\" failed");
}

} // namespace sturmspec
