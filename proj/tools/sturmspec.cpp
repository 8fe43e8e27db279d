#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sturmspec/experiment.hpp"

namespace {

using sturmspec::ExperimentConfig;

struct RawFlags {
    std::string alpha_cf, alpha_period, levels, config_path;
    std::string beta;
    std::optional<double> lambda;
};

void add_common(CLI::App* sub, ExperimentConfig& c, RawFlags& raw) {
    sub->add_option("--config", raw.config_path, "JSON config; command-line flags override it");
    sub->add_option("--model", c.model, "registry model (fibonacci, period-doubling, thue-morse, ...)");
    sub->add_option("--alpha-cf", raw.alpha_cf, "continued fraction coefficients, e.g. 1,1,1x40");
    sub->add_option("--alpha-period", raw.alpha_period, "repeating CF block, e.g. 1 or 1,2");
    sub->add_option("--beta", raw.beta, "interval length p/q, or 'alpha'");
    sub->add_option("--lambda", raw.lambda, "coupling constant");
    sub->add_option("--precision", c.precision, "approximant denominator > P * largest index");
    sub->add_option("--jobs", c.jobs, "worker threads");
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--seed", c.rng_seed, "random seed");
    sub->add_flag("--timing", c.timing, "embed wall time in the report");
}

ExperimentConfig merge(const std::string& task, ExperimentConfig flags, const RawFlags& raw,
                       const std::vector<std::string>& set_options) {
    ExperimentConfig c;
    if (!raw.config_path.empty()) {
        std::ifstream in(raw.config_path);
        if (!in) throw sturmspec::Error(sturmspec::ErrorKind::io, "cli", "config", "cannot read " + raw.config_path);
        sturmspec::json j;
        try {
            j = sturmspec::json::parse(in);
        } catch (const sturmspec::json::exception& e) {
            throw sturmspec::Error(sturmspec::ErrorKind::invalid_input, "cli", "config", e.what());
        }
        c = sturmspec::config_from_json(j);
    } else {
        c = flags;
    }
    // Explicit flags win over the config file.
    auto given = [&](const std::string& name) {
        return std::find(set_options.begin(), set_options.end(), name) != set_options.end();
    };
#define STURMSPEC_TAKE(flag, field) \
    if (given(flag)) c.field = flags.field;
    STURMSPEC_TAKE("--model", model)
    STURMSPEC_TAKE("--substitution", substitution)
    STURMSPEC_TAKE("--precision", precision)
    STURMSPEC_TAKE("--jobs", jobs)
    STURMSPEC_TAKE("--out", out)
    STURMSPEC_TAKE("--format", format)
    STURMSPEC_TAKE("--seed", rng_seed)
    STURMSPEC_TAKE("--timing", timing)
    STURMSPEC_TAKE("--L", length)
    STURMSPEC_TAKE("--level", level)
    STURMSPEC_TAKE("--steps", steps)
    STURMSPEC_TAKE("--prefix", prefix)
    STURMSPEC_TAKE("--grid", grid)
    STURMSPEC_TAKE("--seeds", seeds)
    STURMSPEC_TAKE("--energies", energies)
    STURMSPEC_TAKE("--potential", potential)
    STURMSPEC_TAKE("--samples", samples_per_band)
    STURMSPEC_TAKE("--control-level", control_level)
    STURMSPEC_TAKE("--tower", tower_depth)
#undef STURMSPEC_TAKE
    if (given("--alpha-cf")) c.alpha_cf = sturmspec::parse_cf_list(raw.alpha_cf);
    if (given("--alpha-period")) c.alpha_period = sturmspec::parse_cf_list(raw.alpha_period);
    if (given("--beta")) c.beta = raw.beta;
    if (raw.lambda) c.lambda = *raw.lambda;
    if (given("--levels")) std::tie(c.level_lo, c.level_hi) = sturmspec::parse_levels(raw.levels);
    c.task = task;
    // A bare Fibonacci request means the golden-mean rotation.
    if (c.model == "fibonacci" && c.alpha_cf.empty() && c.alpha_period.empty()) c.alpha_period = {1};
    return c;
}

std::vector<std::string> given_options(const CLI::App* sub) {
    std::vector<std::string> out;
    for (const CLI::Option* opt : sub->get_options())
        if (opt->count() > 0) out.push_back(opt->get_name());
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sturmian and substitution Schroedinger operators: words, spectra, Lyapunov exponents, certificates"};
    app.set_version_flag("--version", std::string(sturmspec::tool_version));
    app.require_subcommand(1);

    ExperimentConfig flags;
    RawFlags raw;

    auto* word = app.add_subcommand("word", "prefix of c_alpha or a substitution fixed point");
    word->add_option("--L", flags.length, "prefix length");
    word->add_option("--substitution", flags.substitution, "substitution, e.g. a:ab,b:a");
    word->add_option("--tower", flags.tower_depth, "also export s_{-1}..s_N");

    auto* spectrum = app.add_subcommand("spectrum", "band spectra of the periodic approximants");
    spectrum->add_option("--levels", raw.levels, "level range a..b");

    auto* lyapunov = app.add_subcommand("lyapunov", "finite-n Lyapunov exponents");
    lyapunov->add_option("--potential", flags.potential, "sturmian, circle or substitution");
    lyapunov->add_option("--substitution", flags.substitution, "substitution for --potential substitution");
    lyapunov->add_option("--energies", flags.energies, "a:b:n or from-spectrum:P");
    lyapunov->add_option("--steps", flags.steps, "steps per direction");

    auto* gordon = app.add_subcommand("gordon", "two-block stability certificates");
    gordon->add_option("--level", flags.level, "level n of the s_n s_n window");
    gordon->add_option("--energies", flags.energies, "a:b:n or from-spectrum:P");
    gordon->add_option("--seeds", flags.seeds, "random unit seeds per energy");
    gordon->add_option("--samples", flags.samples_per_band, "trace samples per proxy band");

    auto* hull = app.add_subcommand("hull-check", "legal factors of v_0 versus a theta grid");
    hull->add_option("--L", flags.length, "factor length");
    hull->add_option("--grid", flags.grid, "theta grid size (default 4 L 1000)");
    hull->add_option("--prefix", flags.prefix, "prefix length of v_0");

    auto* appendix = app.add_subcommand("appendix", "boundary-limit sequences and hull checks");
    appendix->add_option("--L", flags.length, "factor length");
    appendix->add_option("--grid", flags.grid, "theta grid size (default 4 L 1000)");
    appendix->add_option("--prefix", flags.prefix, "prefix length of v_0");

    for (auto* sub : {word, spectrum, lyapunov, gordon, hull, appendix}) add_common(sub, flags, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sturmspec::exit_code(sturmspec::ErrorKind::invalid_input);
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const auto config = merge(sub->get_name(), flags, raw, given_options(sub));
        const auto report = sturmspec::run_experiment(config);
        const auto bytes = sturmspec::emit_report(report, config.format);
        if (config.out.empty()) std::cout << bytes;
        else sturmspec::write_report(bytes, config.out);
        return 0;
    } catch (const sturmspec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sturmspec::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sturmspec::exit_code(sturmspec::ErrorKind::numeric);
    }
}
